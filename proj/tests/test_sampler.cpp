#include <gtest/gtest.h>

#include <set>

#include "pcsamp/sampler.hpp"
#include "pcsamp/sweep.hpp"
#include "support.hpp"

using namespace pcsamp;
using namespace pcsamp::testing;

namespace {

/// Independent count: sample k sits at delta1 + k; region i holds it when
/// sum_{j<i} R_j <= delta1 + k < sum_{j<=i} R_j. Counts via ceilings rather
/// than by walking samples.
std::vector<int> counts_by_ceiling(const SignalSpec& spec, const Rational& delta1) {
    std::vector<int> eta;
    Rational left(0);
    for (int i = 1; i <= spec.m(); ++i) {
        const Rational right = left + spec.length(i);
        // #{k >= 0 : left <= delta1 + k < right} = ceil(right - delta1) - ceil(left - delta1)
        const auto hi = (right - delta1).ceil().to_int64();
        const auto lo = (left - delta1).ceil().to_int64();
        eta.push_back(static_cast<int>(std::max<std::int64_t>(hi, 0) - std::max<std::int64_t>(lo, 0)));
        left = right;
    }
    return eta;
}

}  // namespace

TEST(CountDirect, RunningExample) {
    const auto spec = running_spec();
    EXPECT_EQ(count_direct(spec, Rational(1, 10)), pat({2, 3}));
    EXPECT_EQ(count_direct(spec, Rational(3, 10)), pat({2, 2}));
    EXPECT_EQ(count_direct(spec, Rational(4, 5)), pat({1, 3}));
    EXPECT_THROW(count_direct(spec, Rational(1)), std::out_of_range);
    EXPECT_THROW(count_direct(spec, Rational(-1, 2)), std::out_of_range);
}

TEST(CountDirect, AgreesWithCeilingCount) {
    for (const auto& spec : random_specs(40))
        for (long k = 0; k < 200; ++k) {
            const Rational d(k, 200);
            ASSERT_EQ(count_direct(spec, d).eta, counts_by_ceiling(spec, d));
        }
}

TEST(KappaD, Examples) {
    const auto spec = running_spec();
    const auto a = kappa_d(spec, 1, 1);
    EXPECT_EQ(a.kappa, 0);
    EXPECT_EQ(a.d, 5);
    const auto b = kappa_d(spec, 1, 0);
    EXPECT_EQ(b.kappa, 0);
    EXPECT_EQ(b.d, 2);

    SignalSpec heavy;
    heavy.regions = {{1, 3, Rational(3, 5)}, {2, 4, Rational(3, 5)}};
    const auto c = kappa_d(heavy, 1, 1);
    EXPECT_EQ(c.kappa, 1);
    EXPECT_EQ(c.d, 3 + 4 - 1);

    EXPECT_THROW(kappa_d(spec, 2, 1), std::out_of_range);
    EXPECT_THROW(kappa_d(spec, 0, 0), std::out_of_range);
}

TEST(CumulativeCount, Examples) {
    const auto spec = running_spec();
    EXPECT_EQ(cumulative_count(spec, 1, 1, Rational(1, 10)), 5);
    EXPECT_EQ(cumulative_count(spec, 1, 1, Rational(3, 10)), 4);
    // Exactly at the threshold 1 - 1/4 the lower branch applies.
    EXPECT_EQ(cumulative_count(spec, 1, 0, Rational(3, 4)), 1);
    EXPECT_EQ(cumulative_count(spec, 1, 0, Rational(3, 4) - Rational(1, 1000)), 2);
    EXPECT_THROW(cumulative_count(spec, 2, 1, Rational(0)), std::out_of_range);
}

TEST(EnumerateAtlas, RunningExample) {
    const auto atlas = enumerate_atlas(running_spec());
    ASSERT_EQ(atlas.cells.size(), 3u);
    EXPECT_EQ(atlas.cells[0].delta_lo, Rational(0));
    EXPECT_EQ(atlas.cells[0].delta_hi, Rational(1, 4));
    EXPECT_EQ(atlas.cells[0].pattern, pat({2, 3}));
    EXPECT_EQ(atlas.cells[1].delta_hi, Rational(3, 4));
    EXPECT_EQ(atlas.cells[1].pattern, pat({2, 2}));
    EXPECT_EQ(atlas.cells[2].delta_hi, Rational(1));
    EXPECT_EQ(atlas.cells[2].pattern, pat({1, 3}));
    EXPECT_EQ(drop_threshold(running_spec(), 1), Rational(3, 4));
    EXPECT_EQ(drop_threshold(running_spec(), 2), Rational(1, 4));
    EXPECT_EQ(atlas.cell_for(Rational(1, 4)).pattern, pat({2, 2}));
    EXPECT_THROW(atlas.cell_for(Rational(1)), std::out_of_range);
}

TEST(EnumerateAtlas, SingleRegion) {
    SignalSpec s;
    s.regions = {{5, 3, Rational(1, 2)}};
    const auto atlas = enumerate_atlas(s);
    ASSERT_EQ(atlas.cells.size(), 2u);
    EXPECT_EQ(atlas.cells[0].delta_hi, Rational(1, 2));
    EXPECT_EQ(atlas.cells[0].pattern, pat({3}));
    EXPECT_EQ(atlas.cells[1].pattern, pat({2}));
}

TEST(EnumerateAtlas, CoincidingThresholdsAreRejected) {
    SignalSpec s;
    s.regions = {{1, 2, Rational(1, 4)}, {2, 2, Rational(3, 4)}};
    EXPECT_THROW(enumerate_atlas(s), SpecError);
}

TEST(AtlasProperties, CardinalityDistinctnessAndMembership) {
    for (const auto& spec : random_specs(100)) {
        const auto atlas = enumerate_atlas(spec);
        ASSERT_EQ(static_cast<int>(atlas.cells.size()), spec.m() + 1);
        const auto patterns = atlas.patterns();
        ASSERT_EQ(std::set<SamplingPattern>(patterns.begin(), patterns.end()).size(), patterns.size());
        ASSERT_EQ(atlas.cells.front().delta_lo, Rational(0));
        ASSERT_EQ(atlas.cells.back().delta_hi, Rational(1));
        for (std::size_t c = 0; c < atlas.cells.size(); ++c) {
            const auto& cell = atlas.cells[c];
            ASSERT_LT(cell.delta_lo, cell.delta_hi);
            if (c > 0) {
                ASSERT_EQ(cell.delta_lo, atlas.cells[c - 1].delta_hi);
                ASSERT_NE(cell.pattern, atlas.cells[c - 1].pattern);
            }
            const Rational mid = (cell.delta_lo + cell.delta_hi) / 2;
            ASSERT_EQ(count_direct(spec, mid), cell.pattern);
            for (int i = 1; i <= spec.m(); ++i) {
                const int n = spec.region(i).n;
                ASSERT_TRUE(cell.pattern[i] == n || cell.pattern[i] == n - 1);
            }
        }
    }
}

TEST(AtlasProperties, LastRegionSplitIsUnique) {
    for (const auto& spec : random_specs(50)) {
        const auto atlas = enumerate_atlas(spec);
        const auto [upper, lower] = last_region_split(atlas);
        const int m = spec.m();
        EXPECT_EQ(upper[m], spec.region(m).n);
        EXPECT_EQ(lower[m], spec.region(m).n - 1);
        for (int i = 1; i < m; ++i) EXPECT_EQ(upper[i], lower[i]);
    }
}

TEST(CountingEquivalence, FormulaMatchesDirectCounts) {
    for (const auto& spec : random_specs(30)) {
        for (long k = 0; k < 300; ++k) {
            const Rational d1(k, 300);
            const auto eta = count_direct(spec, d1);
            const auto deltas = delta_chain(spec, d1);
            for (int i = 1; i <= spec.m(); ++i)
                for (int K = 0; i + K <= spec.m(); ++K)
                    ASSERT_EQ(cumulative_count(spec, i, K, deltas[i - 1]), eta.sum(i, i + K))
                        << "i=" << i << " K=" << K << " delta1=" << d1;
        }
    }
}

TEST(CountingEquivalence, SweepFindsNoMismatchAndIsDeterministicAcrossKernels) {
    for (const auto& spec : random_specs(20)) {
        const auto serial = proposition_sweep(spec, 500, Execution::Serial);
        const auto parallel = proposition_sweep(spec, 500, Execution::Parallel);
        EXPECT_EQ(serial.mismatches, 0u) << serial.first_mismatch.value_or("");
        EXPECT_EQ(serial, parallel);
        EXPECT_EQ(serial.points, 500u + spec.m());
    }
}

TEST(DeltaChain, Examples) {
    const auto spec = running_spec();
    const auto d = delta_chain(spec, Rational(1, 10));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0], Rational(1, 10));
    EXPECT_EQ(d[1], Rational(7, 20));
    EXPECT_EQ(delta_chain(spec, Rational(0))[0], Rational(0));
}

TEST(DeltaChain, MatchesFirstSampleInsideEachRegion) {
    for (const auto& spec : random_specs(40)) {
        for (long k = 0; k < 97; k += 7) {
            const Rational d1(k, 97);
            const auto d = delta_chain(spec, d1);
            Rational left(0);
            for (int i = 1; i <= spec.m(); ++i) {
                // First sample at or after the left edge of region i.
                const Rational first = d1 + (left - d1).ceil();
                ASSERT_EQ(d[i - 1], first - left);
                ASSERT_GE(d[i - 1], Rational(0));
                ASSERT_LT(d[i - 1], Rational(1));
                left += spec.length(i);
            }
        }
    }
}
