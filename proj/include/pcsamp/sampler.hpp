#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "pcsamp/signal.hpp"

namespace pcsamp {

/// Per-region sample counts (eta_1, ..., eta_m) for one grid position.
struct SamplingPattern {
    std::vector<int> eta;

    int m() const { return static_cast<int>(eta.size()); }
    /// eta_i, 1-based.
    int operator[](int i) const { return eta.at(static_cast<std::size_t>(i - 1)); }
    /// eta_first + ... + eta_last (1-based, inclusive); zero when last < first.
    long sum(int first, int last) const;
    std::string str() const;

    friend auto operator<=>(const SamplingPattern&, const SamplingPattern&) = default;
};

struct AtlasCell {
    Rational delta_lo;
    Rational delta_hi;
    SamplingPattern pattern;
};

/// The m+1 patterns of a signal, keyed by the half-open sub-interval of
/// [0, 1) holding Delta_1.
struct PatternAtlas {
    std::vector<AtlasCell> cells;

    std::vector<SamplingPattern> patterns() const;
    /// Cell whose half-open range contains delta1.
    const AtlasCell& cell_for(const Rational& delta1) const;
};

/// Counts samples at delta1 + k (k >= 0) falling in each region by direct
/// placement. Requires delta1 in [0, 1).
SamplingPattern count_direct(const SignalSpec& spec, const Rational& delta1);

struct KappaD {
    long kappa;
    long d;
};

/// kappa(i, K) = floor(f_i + ... + f_{i+K}) and d_{i,K} = n_i + ... + n_{i+K} - kappa.
/// Throws std::out_of_range unless 1 <= i and i + K <= m.
KappaD kappa_d(const SignalSpec& spec, int i, int K);

/// Closed-form number of samples in regions i .. i+K given the offset
/// Delta_i in [0, 1) of the first sample inside region i.
long cumulative_count(const SignalSpec& spec, int i, int K, const Rational& delta_i);

/// Delta_1 value at which the samples in regions 1..k drop from d_{1,k-1}
/// to d_{1,k-1} - 1, k in [1, m].
Rational drop_threshold(const SignalSpec& spec, int k);

/// Enumerates every achievable sampling pattern with its Delta_1 range.
/// Throws SpecError(Genericity) if two thresholds coincide.
PatternAtlas enumerate_atlas(const SignalSpec& spec);

/// The two atlas patterns that agree on eta_1 .. eta_{m-1} and differ in
/// eta_m (one shows n_m samples there, the other n_m - 1). Exactly one such
/// pair exists.
std::pair<SamplingPattern, SamplingPattern> last_region_split(const PatternAtlas& atlas);

/// Offsets Delta_1 .. Delta_m induced by Delta_1 (0-based vector, entry i-1
/// holds Delta_i).
std::vector<Rational> delta_chain(const SignalSpec& spec, const Rational& delta1);

}  // namespace pcsamp
