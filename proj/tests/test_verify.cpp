#include <gtest/gtest.h>

#include "pcsamp/sweep.hpp"
#include "pcsamp/verify.hpp"
#include "support.hpp"

using namespace pcsamp;
using namespace pcsamp::testing;

namespace {

std::vector<Scenario> bundled() {
    std::vector<Scenario> out;
    for (const char* name : {"running", "chain", "example6", "single"})
        out.push_back(load_scenario(std::string(PCSAMP_SCENARIOS) + "/" + name + ".json"));
    return out;
}

VerifyOptions quick() {
    VerifyOptions o;
    o.trials = 4;
    o.delta_points = 200;
    return o;
}

}  // namespace

TEST(Verify, BundledScenariosPass) {
    const auto report = run_verification(bundled(), quick());
    for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    EXPECT_TRUE(report.ok());
}

TEST(Verify, MidpointFaultIsCaught) {
    auto o = quick();
    o.inject_midpoint_fault = true;
    const auto report = run_verification(bundled(), o);
    EXPECT_FALSE(report.ok());
}

TEST(Verify, FaultInjectionOnlyTouchesMidpoints) {
    const auto spec = running_spec();
    const Levels lv(spec);
    const auto est =
        estimate_full(infer_model(ObservationSet(enumerate_atlas(spec).patterns(), lv), 0), lv);
    const auto bad = inject_midpoint_fault(est, lv);
    for (std::size_t k = 0; k < est.cells().size(); ++k) {
        const auto& c = est.cells()[k];
        if (c.tag == CellTag::Midpoint)
            EXPECT_EQ(bad.cells()[k].value, lv[c.governing]);
        else
            EXPECT_EQ(bad.cells()[k].value, c.value);
    }
}

TEST(Verify, SeededRunsRepeat) {
    const auto a = run_verification({}, quick());
    const auto b = run_verification({}, quick());
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (std::size_t k = 0; k < a.checks.size(); ++k) {
        EXPECT_EQ(a.checks[k].passed, b.checks[k].passed);
        EXPECT_EQ(a.checks[k].detail, b.checks[k].detail);
    }
}

TEST(Verify, RejectsBadOptions) {
    auto o = quick();
    o.grid = 1;
    EXPECT_THROW(run_verification({}, o), std::invalid_argument);
    o = quick();
    o.trials = 0;
    EXPECT_THROW(run_verification({}, o), std::invalid_argument);
}

TEST(ConsistencySweep, SummaryAndDeterminism) {
    const auto a = exhaustive_consistency_sweep(SpecGenerator{}, 12, 5, 200, Execution::Serial);
    const auto b = exhaustive_consistency_sweep(SpecGenerator{}, 12, 5, 200, Execution::Parallel);
    EXPECT_TRUE(a.ok()) << (a.failures.empty() ? "" : a.failures.front());
    EXPECT_EQ(a.passed, 12);
    EXPECT_EQ(a.passed, b.passed);
    EXPECT_FALSE(a.first_counterexample);

    SpecGenerator single;
    single.min_m = single.max_m = 1;
    const auto one = exhaustive_consistency_sweep(single, 1, 1, 100);
    EXPECT_TRUE(one.ok());
    EXPECT_THROW(exhaustive_consistency_sweep(single, 0, 1), std::invalid_argument);
}

TEST(ConsistencySweep, CheckSignalAcceptsKnownSignals) {
    EXPECT_FALSE(check_signal(running_spec(), 200));
    EXPECT_FALSE(check_signal(chain_spec(), 200));
    EXPECT_FALSE(check_signal(example6_spec(), 200));
}
