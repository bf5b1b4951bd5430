#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pcsamp/estimator.hpp"
#include "pcsamp/parallel.hpp"
#include "pcsamp/scenario.hpp"

namespace pcsamp {

struct VerifyOptions {
    long grid = 10;            ///< oracle grid points per unit interval
    int trials = 20;           ///< random signals in the sweep
    std::uint64_t seed = 7;
    long delta_points = 1000;  ///< Delta_1 values in the counting sweep
    /// Mutation hook: replaces every midpoint cell by the level on its left,
    /// so the suite can demonstrate that it catches a broken estimator.
    bool inject_midpoint_fault = false;
    /// Placement budget per coupled group for chain perturbation checks on
    /// random partial sets; larger chains are counted as skipped.
    std::size_t chain_tuples = 2'000;
    Execution exec = Execution::Parallel;
};

struct CheckResult {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool ok() const;
};

/// The mutated estimator used by VerifyOptions::inject_midpoint_fault.
Estimate inject_midpoint_fault(const Estimate& est, const Levels& levels);

/// Property suite over the given scenarios and `trials` random signals.
VerificationReport run_verification(const std::vector<Scenario>& scenarios, const VerifyOptions& options);

}  // namespace pcsamp
