#include "pcsamp/signal.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pcsamp {

const char* to_string(SpecViolation v) {
    switch (v) {
        case SpecViolation::Amplitude: return "AmplitudeViolation";
        case SpecViolation::Region: return "RegionViolation";
        case SpecViolation::Genericity: return "GenericityViolation";
    }
    return "SpecViolation";
}

namespace {

std::string describe(SpecViolation kind, int i, int K, const std::string& detail) {
    std::string s = to_string(kind);
    if (kind == SpecViolation::Genericity)
        s += " (i=" + std::to_string(i) + ",K=" + std::to_string(K) + ")";
    else
        s += " (i=" + std::to_string(i) + ")";
    return s + ": " + detail;
}

}  // namespace

SpecError::SpecError(SpecViolation kind, int i, int K, const std::string& detail)
    : std::invalid_argument(describe(kind, i, K, detail)), kind_(kind), i_(i), K_(K) {}

SignalSpec SignalSpec::reversed() const {
    SignalSpec r = *this;
    std::reverse(r.regions.begin(), r.regions.end());
    return r;
}

Levels::Levels(std::vector<Rational> g) {
    padded_.reserve(g.size() + 2);
    padded_.emplace_back(0);
    for (auto& v : g) padded_.push_back(std::move(v));
    padded_.emplace_back(0);
}

Levels::Levels(const SignalSpec& spec) {
    padded_.reserve(spec.regions.size() + 2);
    padded_.emplace_back(0);
    for (const auto& r : spec.regions) padded_.push_back(r.g);
    padded_.emplace_back(0);
}

Levels Levels::reversed() const {
    Levels r = *this;
    std::reverse(r.padded_.begin(), r.padded_.end());
    return r;
}

SignalSpec validate_spec(const SignalSpec& raw) {
    const int m = raw.m();
    if (m < 1) throw SpecError(SpecViolation::Region, 0, 0, "signal needs at least one region");
    if (raw.T <= Rational(0)) throw SpecError(SpecViolation::Region, 0, 0, "grid interval T must be positive");

    if (raw.region(1).g == Rational(0))
        throw SpecError(SpecViolation::Amplitude, 1, 0, "first amplitude must be nonzero");
    if (raw.region(m).g == Rational(0))
        throw SpecError(SpecViolation::Amplitude, m, 0, "last amplitude must be nonzero");
    for (int i = 1; i < m; ++i)
        if (raw.region(i).g == raw.region(i + 1).g)
            throw SpecError(SpecViolation::Amplitude, i, 0,
                            "adjacent amplitudes g_" + std::to_string(i) + " and g_" +
                                std::to_string(i + 1) + " are equal");

    for (int i = 1; i <= m; ++i) {
        const Region& r = raw.region(i);
        if (r.n < 2) throw SpecError(SpecViolation::Region, i, 0, "n must be at least 2");
        if (r.f <= Rational(0) || r.f >= Rational(1))
            throw SpecError(SpecViolation::Region, i, 0, "f must lie strictly inside (0,1), got " + r.f.str());
    }

    // Every run f_i + ... + f_{i+K} must be non-integer.
    for (int i = 1; i <= m; ++i) {
        Rational sum(0);
        for (int K = 0; i + K <= m; ++K) {
            sum += raw.region(i + K).f;
            if (sum.is_integer())
                throw SpecError(SpecViolation::Genericity, i, K,
                                "f_" + std::to_string(i) + " + ... + f_" + std::to_string(i + K) +
                                    " = " + sum.str() + " is an integer");
        }
    }
    return raw;
}

Translation translate(const SignalSpec& spec, int l) {
    const int m = spec.m();
    if (l < 0 || l > m) throw std::out_of_range("reference index " + std::to_string(l) + " outside [0, m]");
    Translation tr{l, std::vector<Rational>(static_cast<std::size_t>(m + 1))};
    for (int i = l + 1; i <= m; ++i) tr.D[i] = tr.D[i - 1] + spec.length(i);
    for (int i = l - 1; i >= 0; --i) tr.D[i] = tr.D[i + 1] - spec.length(i + 1);
    return tr;
}

PiecewiseFunction truth_function(const SignalSpec& spec, int l) {
    return signal_from_positions(Levels(spec), translate(spec, l).D);
}

PiecewiseFunction signal_from_positions(const Levels& levels, const std::vector<Rational>& D) {
    const int m = levels.m();
    if (static_cast<int>(D.size()) != m + 1)
        throw std::invalid_argument("signal_from_positions: need m+1 discontinuity positions");
    std::vector<Rational> bps;
    std::vector<Rational> vals;
    bps.push_back(D[0]);
    for (int i = 1; i <= m; ++i) {
        if (D[i] < D[i - 1]) throw std::invalid_argument("signal_from_positions: positions out of order");
        if (D[i] == D[i - 1]) continue;
        bps.push_back(D[i]);
        vals.push_back(levels[i]);
    }
    if (vals.empty()) return {};
    return {std::move(bps), std::move(vals)};
}

}  // namespace pcsamp
