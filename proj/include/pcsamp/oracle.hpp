#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pcsamp/estimator.hpp"
#include "pcsamp/inference.hpp"
#include "pcsamp/parallel.hpp"
#include "pcsamp/piecewise.hpp"

namespace pcsamp {

/// Exact \int (a - b)^2 dt over the real line.
Rational energy_between(const PiecewiseFunction& a, const PiecewiseFunction& b);

/// Exact \int |a - b| dt over the real line.
Rational absolute_error_between(const PiecewiseFunction& a, const PiecewiseFunction& b);

enum class ErrorMetric { Energy, Absolute };

/// D_right - D_left must lie in [min_gap, max_gap].
struct SpacingConstraint {
    int left = 0;
    int right = 0;
    long min_gap = 1;
    long max_gap = 2;
};

/// Set of discontinuity placements consistent with an uncertainty model.
/// Positions are searched over the closure of each interval; the error is
/// continuous in the positions, so the supremum over the open box equals the
/// maximum over its closure.
struct FeasibleBox {
    int l = 0;
    std::vector<GridInterval> intervals;  ///< per discontinuity; entry l is (0, 0)
    std::vector<SpacingConstraint> spacing;

    int m() const { return static_cast<int>(intervals.size()) - 1; }
};

/// Independent intervals plus a [1, 2] spacing constraint for every region
/// that shows one sample in all observations and sits between two 2T-uncertain
/// discontinuities (chains and the runs that touch the reference).
FeasibleBox feasible_box(const UncertaintyModel& model, const ObservationSet& obs);

/// Intervals only, no coupling.
FeasibleBox independent_box(const UncertaintyModel& model);

struct WorstCase {
    Rational max;
    Rational min;
    std::vector<Rational> witness;      ///< placement attaining max
    std::vector<Rational> min_witness;  ///< placement attaining min
    std::size_t evaluations = 0;
};

/// Maximum (and minimum) error between `est` and the truth over placements of
/// the discontinuities on the grid of step 1/grid inside `box`. Coupled
/// discontinuities (overlapping intervals or spacing constraints) are searched
/// jointly; independent groups are searched separately and combined, which is
/// exact because the error splits over their disjoint spans. Throws
/// EmptyFeasibleSet when some group admits no placement, and
/// std::length_error when a group would need more than `max_tuples`
/// placements.
WorstCase worst_case_energy(const Estimate& est, const Levels& levels, const FeasibleBox& box, long grid,
                            Execution exec = Execution::Parallel, ErrorMetric metric = ErrorMetric::Energy,
                            std::size_t max_tuples = 1'000'000);

/// Same search over the full Cartesian product of all placements, without
/// splitting into groups. Only for small models.
WorstCase joint_worst_case_energy(const Estimate& est, const Levels& levels, const FeasibleBox& box, long grid,
                                  Execution exec = Execution::Parallel,
                                  ErrorMetric metric = ErrorMetric::Energy,
                                  std::size_t max_tuples = 1'000'000);

struct PerturbationEntry {
    long cell_lo = 0;
    Rational delta;
    Rational worst;
    std::vector<Rational> witness;
};

struct PerturbationReport {
    WorstCase base;
    std::vector<PerturbationEntry> entries;
    std::vector<PerturbationEntry> violations;  ///< worst case went down
    std::vector<PerturbationEntry> ties;        ///< nonzero delta, worst case unchanged

    bool ok() const { return violations.empty(); }
    bool strict() const { return violations.empty() && ties.empty(); }
    /// Smallest increase of the worst case over all nonzero deltas.
    std::optional<Rational> min_margin() const;
};

/// Shifts one cell value at a time by each delta and re-runs the worst-case
/// search; a decrease is a violation of minimax optimality. `cells` lists the
/// cell left endpoints to probe (all cells when empty).
PerturbationReport perturbation_minimax_check(const Estimate& est, const Levels& levels, const FeasibleBox& box,
                                              const std::vector<Rational>& deltas, long grid,
                                              const std::vector<long>& cells = {},
                                              Execution exec = Execution::Parallel,
                                              std::size_t max_tuples = 1'000'000);

}  // namespace pcsamp
