#include "pcsamp/sampler.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcsamp {

long SamplingPattern::sum(int first, int last) const {
    long s = 0;
    for (int j = first; j <= last; ++j) s += (*this)[j];
    return s;
}

std::string SamplingPattern::str() const {
    std::string s = "(";
    for (std::size_t k = 0; k < eta.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(eta[k]);
    }
    return s + ")";
}

std::vector<SamplingPattern> PatternAtlas::patterns() const {
    std::vector<SamplingPattern> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back(c.pattern);
    return out;
}

const AtlasCell& PatternAtlas::cell_for(const Rational& delta1) const {
    for (const auto& c : cells)
        if (c.delta_lo <= delta1 && delta1 < c.delta_hi) return c;
    throw std::out_of_range("delta " + delta1.str() + " outside [0,1)");
}

SamplingPattern count_direct(const SignalSpec& spec, const Rational& delta1) {
    if (delta1 < Rational(0) || delta1 >= Rational(1))
        throw std::out_of_range("delta1 must lie in [0,1)");
    const int m = spec.m();
    std::vector<Rational> right(static_cast<std::size_t>(m));
    Rational edge(0);
    for (int i = 1; i <= m; ++i) right[i - 1] = edge += spec.length(i);

    SamplingPattern p{std::vector<int>(static_cast<std::size_t>(m), 0)};
    int region = 0;
    for (Rational x = delta1; x < right.back(); x += Rational(1)) {
        while (x >= right[region]) ++region;
        ++p.eta[region];
    }
    return p;
}

KappaD kappa_d(const SignalSpec& spec, int i, int K) {
    if (i < 1 || K < 0 || i + K > spec.m())
        throw std::out_of_range("kappa_d: need 1 <= i and i+K <= m (i=" + std::to_string(i) +
                                ", K=" + std::to_string(K) + ")");
    Rational fsum(0);
    long nsum = 0;
    for (int j = 0; j <= K; ++j) {
        fsum += spec.region(i + j).f;
        nsum += spec.region(i + j).n;
    }
    const long kappa = fsum.floor().to_int64();
    return {kappa, nsum - kappa};
}

namespace {

Rational f_sum(const SignalSpec& spec, int i, int K) {
    Rational s(0);
    for (int j = 0; j <= K; ++j) s += spec.region(i + j).f;
    return s;
}

}  // namespace

long cumulative_count(const SignalSpec& spec, int i, int K, const Rational& delta_i) {
    const auto [kappa, d] = kappa_d(spec, i, K);
    const Rational threshold = Rational(1 + kappa) - f_sum(spec, i, K);
    return delta_i < threshold ? d : d - 1;
}

Rational drop_threshold(const SignalSpec& spec, int k) {
    const auto kd = kappa_d(spec, 1, k - 1);
    return Rational(1 + kd.kappa) - f_sum(spec, 1, k - 1);
}

PatternAtlas enumerate_atlas(const SignalSpec& spec) {
    const int m = spec.m();
    std::vector<Rational> cuts;
    cuts.reserve(static_cast<std::size_t>(m) + 2);
    for (int k = 1; k <= m; ++k) {
        Rational th = drop_threshold(spec, k);
        if (th <= Rational(0) || th >= Rational(1))
            throw SpecError(SpecViolation::Genericity, 1, k - 1, "threshold " + th.str() + " not inside (0,1)");
        cuts.push_back(std::move(th));
    }
    std::sort(cuts.begin(), cuts.end());
    if (auto dup = std::adjacent_find(cuts.begin(), cuts.end()); dup != cuts.end())
        throw SpecError(SpecViolation::Genericity, 1, 0, "two pattern thresholds coincide at " + dup->str());
    cuts.insert(cuts.begin(), Rational(0));
    cuts.emplace_back(1);

    PatternAtlas atlas;
    atlas.cells.reserve(static_cast<std::size_t>(m) + 1);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        // Counts are constant on [lo, hi); lo itself picks the branch.
        const Rational& lo = cuts[c];
        SamplingPattern p{std::vector<int>(static_cast<std::size_t>(m))};
        long previous = 0;
        for (int k = 1; k <= m; ++k) {
            const long total = cumulative_count(spec, 1, k - 1, lo);
            p.eta[k - 1] = static_cast<int>(total - previous);
            previous = total;
        }
        atlas.cells.push_back({lo, cuts[c + 1], std::move(p)});
    }
    return atlas;
}

std::pair<SamplingPattern, SamplingPattern> last_region_split(const PatternAtlas& atlas) {
    const auto& cells = atlas.cells;
    std::vector<std::pair<SamplingPattern, SamplingPattern>> found;
    for (std::size_t a = 0; a < cells.size(); ++a)
        for (std::size_t b = a + 1; b < cells.size(); ++b) {
            const auto& p = cells[a].pattern;
            const auto& q = cells[b].pattern;
            if (std::equal(p.eta.begin(), p.eta.end() - 1, q.eta.begin()) && p.eta.back() != q.eta.back())
                found.emplace_back(p.eta.back() > q.eta.back() ? std::pair{p, q} : std::pair{q, p});
        }
    if (found.size() != 1)
        throw std::logic_error("expected exactly one pattern pair split by the last region, found " +
                               std::to_string(found.size()));
    return found.front();
}

std::vector<Rational> delta_chain(const SignalSpec& spec, const Rational& delta1) {
    if (delta1 < Rational(0) || delta1 >= Rational(1))
        throw std::out_of_range("delta1 must lie in [0,1)");
    std::vector<Rational> deltas;
    deltas.reserve(spec.regions.size());
    deltas.push_back(delta1);
    for (int i = 1; i < spec.m(); ++i) deltas.push_back((deltas.back() + spec.region(i).f).frac());
    return deltas;
}

}  // namespace pcsamp
