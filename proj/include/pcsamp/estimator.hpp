#pragma once

#include <optional>
#include <vector>

#include "pcsamp/inference.hpp"
#include "pcsamp/piecewise.hpp"

namespace pcsamp {

/// How an estimate cell got its value.
enum class CellTag {
    Known,          ///< the truth is a single known level on the whole cell
    Midpoint,       ///< halfway between the two levels around one discontinuity
    ChainInterior,  ///< Chebyshev center of three consecutive levels inside a chain
    Zero,           ///< outside the support span
    Fallback,       ///< Chebyshev center of the levels the feasible box allows
};

const char* to_string(CellTag tag);

/// Unit grid cell (lo, lo + 1) of an estimate.
struct EstimateCell {
    long lo = 0;
    Rational value;
    CellTag tag = CellTag::Known;
    int governing = -1;  ///< level index (Known), discontinuity index (Midpoint), chain anchor (ChainInterior)

    long hi() const { return lo + 1; }
};

/// Estimate of g^(l) that is constant on every unit cell of the grid and zero
/// outside [lo, hi].
class Estimate {
public:
    Estimate() = default;
    /// `knots` holds the value at each integer point lo..hi where a known
    /// level is pinned (a closed known span, possibly a single point).
    Estimate(int l, std::vector<EstimateCell> cells, std::vector<std::optional<Rational>> knots = {});

    int l() const { return l_; }
    long lo() const { return cells_.empty() ? 0 : cells_.front().lo; }
    long hi() const { return cells_.empty() ? 0 : cells_.back().hi(); }
    const std::vector<EstimateCell>& cells() const { return cells_; }
    const PiecewiseFunction& fn() const { return fn_; }
    std::vector<Rational> gamma() const;

    /// Pointwise value: pinned knot values at integer points, zero outside
    /// [lo, hi], fn() elsewhere.
    Rational at(const Rational& t) const;

    /// Same cells with the values replaced; tags are kept.
    Estimate with_gamma(const std::vector<Rational>& gamma) const;

    friend bool operator==(const Estimate& a, const Estimate& b);

private:
    int l_ = 0;
    std::vector<EstimateCell> cells_;
    std::vector<std::optional<Rational>> knots_;
    PiecewiseFunction fn_;
};

/// Minimum-energy estimate from the complete set of patterns: known levels
/// between uncertainty intervals and midpoints inside them. Throws
/// PartialObservations if any position is only known to within 2T.
Estimate estimate_full(const UncertaintyModel& model, const Levels& levels);

/// Worst-case-optimal estimate from a partial set of patterns. Cells that the
/// chain rules leave ambiguous (overlapping intervals outside any chain) take
/// the Chebyshev center of the levels the feasible box allows.
Estimate estimate_partial(const UncertaintyModel& model, const Levels& levels);

/// Levels region j may show somewhere inside the unit cell (lo, lo+1), given
/// only the per-discontinuity intervals of the model.
std::vector<int> feasible_levels(const UncertaintyModel& model, long lo);

/// Closed-form error energy in units of amplitude^2 * T. Returns nullopt when
/// chains are present or intervals overlap, where no closed form is known.
std::optional<Rational> closed_form_energy(const UncertaintyModel& model, const Levels& levels);

/// Reference discontinuity with the largest jump |g_k - g_{k+1}|; ties go to
/// the smallest index.
int best_reference(const Levels& levels);

/// Worst-case absolute error, in units of amplitude * T, of an estimate that
/// is the constant ghat[i] on each width-T interval i != l. `ghat` has m+1
/// entries; entry l is ignored. Requires a full model.
Rational absolute_error_bound(const UncertaintyModel& model, const Levels& levels,
                              const std::vector<Rational>& ghat);

}  // namespace pcsamp
