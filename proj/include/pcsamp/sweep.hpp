#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pcsamp/parallel.hpp"
#include "pcsamp/signal.hpp"

namespace pcsamp {

/// Random valid signals: n_i uniform in [min_n, max_n], f_i = k / f_denominator
/// with k uniform in [1, f_denominator - 1], integer amplitudes uniform in
/// [amp_lo, amp_hi]. Draws violating an invariant are rejected and redrawn.
struct SpecGenerator {
    int min_m = 1;
    int max_m = 8;
    int min_n = 2;
    int max_n = 5;
    long f_denominator = 97;
    long amp_lo = -6;
    long amp_hi = 9;

    SignalSpec operator()(std::mt19937_64& rng) const;
};

/// `count` specs from a generator seeded with `seed`; identical across runs.
std::vector<SignalSpec> generate_specs(const SpecGenerator& gen, int count, std::uint64_t seed);

struct CountingSweep {
    std::size_t points = 0;
    std::size_t comparisons = 0;
    std::size_t mismatches = 0;
    std::optional<std::string> first_mismatch;

    friend bool operator==(const CountingSweep&, const CountingSweep&) = default;
};

/// Closed-form cumulative counts against direct sample placement, for every
/// run of regions (i, K) at Delta_1 = k / points (k < points) and at every
/// pattern threshold. Also checks the induced offsets Delta_i against direct
/// placement.
CountingSweep proposition_sweep(const SignalSpec& spec, long points, Execution exec = Execution::Parallel);

/// Runs the per-signal consistency checks (atlas cardinality and cell
/// membership, counting equivalence, full-pattern inference round trip for
/// every reference, grid agreement of the estimate, reference-sweep law).
/// Returns the first failure, or nullopt.
std::optional<std::string> check_signal(const SignalSpec& spec, long delta_points);

struct SweepSummary {
    int trials = 0;
    int passed = 0;
    std::vector<std::string> failures;
    std::optional<SignalSpec> first_counterexample;

    bool ok() const { return passed == trials; }
};

SweepSummary exhaustive_consistency_sweep(const SpecGenerator& gen, int trials, std::uint64_t seed,
                                          long delta_points = 1000, Execution exec = Execution::Parallel);

}  // namespace pcsamp
