#include "pcsamp/estimator.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pcsamp {

const char* to_string(CellTag tag) {
    switch (tag) {
        case CellTag::Known: return "known";
        case CellTag::Midpoint: return "midpoint";
        case CellTag::ChainInterior: return "chainInterior";
        case CellTag::Zero: return "zero";
        case CellTag::Fallback: return "fallback";
    }
    return "?";
}

namespace {

PiecewiseFunction cells_to_function(const std::vector<EstimateCell>& cells) {
    if (cells.empty()) return {};
    std::vector<Rational> bps;
    std::vector<Rational> vals;
    bps.reserve(cells.size() + 1);
    vals.reserve(cells.size());
    for (const auto& c : cells) {
        bps.emplace_back(c.lo);
        vals.push_back(c.value);
    }
    bps.emplace_back(cells.back().hi());
    return {std::move(bps), std::move(vals)};
}

Rational chebyshev_center(const Levels& levels, std::initializer_list<int> idx) {
    Rational lo = levels[*idx.begin()];
    Rational hi = lo;
    for (int k : idx) {
        lo = min(lo, levels[k]);
        hi = max(hi, levels[k]);
    }
    return (lo + hi) / 2;
}

Rational chebyshev_center(const Levels& levels, const std::vector<int>& idx) {
    Rational lo = levels[idx.front()];
    Rational hi = lo;
    for (int k : idx) {
        lo = min(lo, levels[k]);
        hi = max(hi, levels[k]);
    }
    return (lo + hi) / 2;
}

bool overlaps(const GridInterval& a, const GridInterval& b) { return a.lo < b.hi && b.lo < a.hi; }

/// Level i is pinned on the closed span [G_{i-1,R}, G_{i,L}]; at a shared
/// endpoint the level on the right wins, matching the half-open truth.
std::vector<std::optional<Rational>> known_knots(const UncertaintyModel& model, const Levels& levels, long lo,
                                                 long hi) {
    std::vector<std::optional<Rational>> knots(static_cast<std::size_t>(hi - lo + 1));
    const auto& G = model.G;
    knots.front() = Rational(0);
    for (int i = 1; i <= model.m(); ++i)
        for (long a = std::max(G[i - 1].hi, lo); a <= std::min(G[i].lo, hi); ++a)
            knots[static_cast<std::size_t>(a - lo)] = levels[i];
    knots.back() = Rational(0);
    return knots;
}

}  // namespace

Estimate::Estimate(int l, std::vector<EstimateCell> cells, std::vector<std::optional<Rational>> knots)
    : l_(l), cells_(std::move(cells)), knots_(std::move(knots)) {
    for (std::size_t k = 1; k < cells_.size(); ++k)
        if (cells_[k].lo != cells_[k - 1].lo + 1)
            throw std::invalid_argument("Estimate: cells must be consecutive unit cells");
    if (knots_.empty()) knots_.resize(cells_.empty() ? 0 : cells_.size() + 1);
    if (knots_.size() != (cells_.empty() ? 0 : cells_.size() + 1))
        throw std::invalid_argument("Estimate: one knot slot per grid point");
    fn_ = cells_to_function(cells_);
}

std::vector<Rational> Estimate::gamma() const {
    std::vector<Rational> g;
    g.reserve(cells_.size());
    for (const auto& c : cells_) g.push_back(c.value);
    return g;
}

Rational Estimate::at(const Rational& t) const {
    if (cells_.empty() || t < Rational(lo()) || t > Rational(hi())) return Rational(0);
    if (t.is_integer())
        if (const auto& v = knots_[static_cast<std::size_t>(t.to_int64() - lo())]) return *v;
    return fn_(t);
}

Estimate Estimate::with_gamma(const std::vector<Rational>& gamma) const {
    if (gamma.size() != cells_.size()) throw std::invalid_argument("with_gamma: one value per cell required");
    auto cells = cells_;
    for (std::size_t k = 0; k < cells.size(); ++k) cells[k].value = gamma[k];
    return {l_, std::move(cells), knots_};
}

bool operator==(const Estimate& a, const Estimate& b) {
    if (a.l_ != b.l_ || a.cells_.size() != b.cells_.size() || a.knots_ != b.knots_) return false;
    for (std::size_t k = 0; k < a.cells_.size(); ++k) {
        const auto& x = a.cells_[k];
        const auto& y = b.cells_[k];
        if (x.lo != y.lo || x.value != y.value || x.tag != y.tag || x.governing != y.governing) return false;
    }
    return true;
}

Estimate estimate_full(const UncertaintyModel& model, const Levels& levels) {
    if (!model.full()) throw PartialObservations("estimate_full needs every discontinuity known to within T");
    const int m = model.m();
    const int l = model.l;
    const auto& G = model.G;
    std::vector<EstimateCell> cells;
    for (long a = G[0].lo; a < G[m].hi; ++a) {
        EstimateCell cell{a, Rational(0), CellTag::Known, -1};
        for (int i = 0; i <= m && cell.governing < 0; ++i)
            if (i != l && G[i].lo <= a && a + 1 <= G[i].hi)
                cell = {a, levels.midpoint(i), CellTag::Midpoint, i};
        for (int i = 1; i <= m && cell.governing < 0; ++i)
            if (G[i - 1].hi <= a && a + 1 <= G[i].lo) cell = {a, levels[i], CellTag::Known, i};
        if (cell.governing < 0)
            throw std::logic_error("estimate_full: cell (" + std::to_string(a) + "," + std::to_string(a + 1) +
                                   ") is neither known nor uncertain");
        cells.push_back(std::move(cell));
    }
    return {l, std::move(cells), known_knots(model, levels, G[0].lo, G[m].hi)};
}

std::vector<int> feasible_levels(const UncertaintyModel& model, long lo) {
    const int m = model.m();
    std::vector<int> out;
    for (int j = 0; j <= m + 1; ++j) {
        const bool starts_before = j == 0 || model.G[j - 1].lo < lo + 1;
        const bool ends_after = j == m + 1 || model.G[j].hi > lo;
        if (starts_before && ends_after) out.push_back(j);
    }
    return out;
}

Estimate estimate_partial(const UncertaintyModel& model, const Levels& levels) {
    const int m = model.m();
    const auto& G = model.G;
    const long lo = G[0].lo;
    const long hi = G[m].hi;
    const auto n_cells = static_cast<std::size_t>(hi - lo);
    std::vector<std::optional<EstimateCell>> claim(n_cells);
    std::vector<bool> conflict(n_cells, false);

    const auto assign = [&](long a, Rational value, CellTag tag, int governing) {
        if (a < lo || a >= hi) throw std::logic_error("estimate_partial: cell outside the support span");
        auto& slot = claim[static_cast<std::size_t>(a - lo)];
        if (slot && slot->value != value) conflict[static_cast<std::size_t>(a - lo)] = true;
        if (!slot) slot = EstimateCell{a, std::move(value), tag, governing};
    };

    for (int i : model.Ucomp())
        for (long a = G[i].lo; a < G[i].hi; ++a) assign(a, levels.midpoint(i), CellTag::Midpoint, i);
    for (int i : model.chains.V)
        for (long a = G[i].lo; a < G[i].hi; ++a) assign(a, levels.midpoint(i), CellTag::Midpoint, i);

    for (const Chain& c : model.chains.plus) {
        const int t = c.anchor;
        const long base = G[t].lo;
        assign(base, levels.midpoint(t), CellTag::Midpoint, t);
        for (long k = 2; k <= c.B; ++k) {
            const int r = t + static_cast<int>(k);
            assign(base + k - 1, chebyshev_center(levels, {r - 2, r - 1, r}), CellTag::ChainInterior, t);
        }
        assign(G[c.last()].hi - 1, levels.midpoint(c.last()), CellTag::Midpoint, c.last());
    }
    for (const Chain& c : model.chains.minus) {
        const int t = c.anchor;
        const long top = G[t].hi;
        assign(G[c.first()].lo, levels.midpoint(c.first()), CellTag::Midpoint, c.first());
        for (long k = 2; k <= c.B; ++k) {
            const int r = t - static_cast<int>(k);
            assign(top - k, chebyshev_center(levels, {r + 3, r + 2, r + 1}), CellTag::ChainInterior, t);
        }
        assign(top - 1, levels.midpoint(t), CellTag::Midpoint, t);
    }

    for (int i = 1; i <= m; ++i)
        for (long a = G[i - 1].hi; a < G[i].lo; ++a) assign(a, levels[i], CellTag::Known, i);

    std::vector<EstimateCell> cells;
    cells.reserve(n_cells);
    for (std::size_t k = 0; k < n_cells; ++k) {
        const long a = lo + static_cast<long>(k);
        if (claim[k] && !conflict[k]) {
            cells.push_back(*claim[k]);
            continue;
        }
        const auto feasible = feasible_levels(model, a);
        if (feasible.size() == 1)
            cells.push_back({a, levels[feasible.front()], CellTag::Known, feasible.front()});
        else
            cells.push_back({a, chebyshev_center(levels, feasible), CellTag::Fallback, -1});
    }
    return {model.l, std::move(cells), known_knots(model, levels, lo, hi)};
}

std::optional<Rational> closed_form_energy(const UncertaintyModel& model, const Levels& levels) {
    if (!model.chains.empty()) return std::nullopt;
    const int m = model.m();
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            if (i != model.l && j != model.l && overlaps(model.G[i], model.G[j])) return std::nullopt;

    Rational energy(0);
    for (int i = 0; i <= m; ++i) {
        if (i == model.l) continue;
        const Rational half = levels.jump(i) / 2;
        energy += half * half * Rational(model.G[i].width());
    }
    return energy;
}

int best_reference(const Levels& levels) {
    int best = 0;
    Rational best_jump = levels.jump(0).abs();
    for (int k = 1; k <= levels.m(); ++k) {
        Rational j = levels.jump(k).abs();
        if (j > best_jump) {
            best = k;
            best_jump = std::move(j);
        }
    }
    return best;
}

Rational absolute_error_bound(const UncertaintyModel& model, const Levels& levels,
                              const std::vector<Rational>& ghat) {
    if (!model.full()) throw PartialObservations("absolute_error_bound needs a full pattern set");
    const int m = model.m();
    if (static_cast<int>(ghat.size()) != m + 1)
        throw std::invalid_argument("absolute_error_bound: need one constant per discontinuity");
    Rational bound(0);
    for (int i = 0; i <= m; ++i) {
        if (i == model.l) continue;
        bound += Rational(model.G[i].width()) * max((ghat[i] - levels[i]).abs(), (ghat[i] - levels[i + 1]).abs());
    }
    return bound;
}

}  // namespace pcsamp
