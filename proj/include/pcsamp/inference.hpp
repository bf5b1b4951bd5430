#pragma once

#include <set>
#include <vector>

#include "pcsamp/sampler.hpp"
#include "pcsamp/signal.hpp"

namespace pcsamp {

/// Distinct observed patterns of one signal together with its known
/// amplitudes.
class ObservationSet {
public:
    /// Deduplicates and sorts the patterns. Throws std::invalid_argument on an
    /// empty set, mixed lengths, a length that disagrees with `levels`, or a
    /// non-positive count; throws InconsistentObservations when some run of
    /// regions shows more than two cumulative counts or two non-adjacent ones.
    ObservationSet(std::vector<SamplingPattern> patterns, Levels levels);

    int m() const { return levels_.m(); }
    const std::vector<SamplingPattern>& patterns() const { return patterns_; }
    const Levels& levels() const { return levels_; }

    /// Region i shows exactly one sample in every observation.
    bool unit_region(int i) const;

    ObservationSet reversed() const;

private:
    std::vector<SamplingPattern> patterns_;
    Levels levels_;
};

/// Integer interval (lo, hi) in units of T.
struct GridInterval {
    long lo = 0;
    long hi = 0;

    long width() const { return hi - lo; }
    friend bool operator==(const GridInterval&, const GridInterval&) = default;
};

/// A run of 2T-uncertain discontinuities coupled through regions that hold a
/// single sample in every observation. For an increasing chain (to the right
/// of the reference) members are anchor .. anchor + lambda; for a decreasing
/// chain they are anchor - lambda .. anchor.
struct Chain {
    int anchor = 0;
    int lambda = 0;
    long B = 0;
    bool increasing = true;

    int first() const { return increasing ? anchor : anchor - lambda; }
    int last() const { return increasing ? anchor + lambda : anchor; }
};

struct ChainStructure {
    std::vector<Chain> plus;   ///< anchors ascending
    std::vector<Chain> minus;  ///< anchors descending
    std::vector<int> V;        ///< members of U outside every chain, ascending

    bool empty() const { return plus.empty() && minus.empty(); }
};

/// Everything inferable about discontinuity positions relative to the
/// reference discontinuity l.
struct UncertaintyModel {
    int l = 0;
    std::vector<long> C;          ///< C_0 .. C_m, C_l = 0
    std::vector<bool> in_U;       ///< position known only to within 2T
    std::vector<GridInterval> G;  ///< (G_{i,L}, G_{i,R}); G_l = (0, 0)
    ChainStructure chains;

    int m() const { return static_cast<int>(C.size()) - 1; }
    std::vector<int> U() const;
    /// Indices known to within T, excluding l.
    std::vector<int> Ucomp() const;
    bool full() const { return U().empty(); }
    bool is_V(int i) const;
};

/// Values of the cumulative count between discontinuities l and i across all
/// observations. The result has one element or two consecutive ones.
std::set<long> cumulative_values(const ObservationSet& obs, int l, int i);

UncertaintyModel infer_model(const ObservationSet& obs, int l);

/// Chain bookkeeping for a model whose C, in_U and G are already filled in.
ChainStructure chain_analysis(const ObservationSet& obs, const UncertaintyModel& partial, int l);

}  // namespace pcsamp
