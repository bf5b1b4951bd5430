#pragma once

#include <random>
#include <vector>

#include "pcsamp/sampler.hpp"
#include "pcsamp/signal.hpp"
#include "pcsamp/sweep.hpp"

namespace pcsamp::testing {

/// Signal used all over the tests: g = (4, 2), n = (2, 3), f = (1/4, 1/2),
/// so R = (7/4, 5/2).
inline SignalSpec running_spec() {
    SignalSpec s;
    s.regions = {{4, 2, Rational(1, 4)}, {2, 3, Rational(1, 2)}};
    return s;
}

/// Produces the single pattern (3, 1) at Delta_1 = 3/5.
inline SignalSpec chain_spec() {
    SignalSpec s;
    s.regions = {{4, 3, Rational(1, 4)}, {2, 2, Rational(1, 2)}};
    return s;
}

/// m = 3 signal with n_i = 3 throughout.
inline SignalSpec example6_spec() {
    SignalSpec s;
    s.regions = {{3, 3, Rational(1, 5)}, {5, 3, Rational(2, 7)}, {2, 3, Rational(1, 3)}};
    return s;
}

inline SamplingPattern pat(std::vector<int> eta) { return {std::move(eta)}; }

inline std::vector<SignalSpec> random_specs(int count, std::uint64_t seed = 7) {
    return generate_specs(SpecGenerator{}, count, seed);
}

/// Uniform rational in [lo, hi) with the given denominator.
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long den) {
    std::uniform_int_distribution<long> k(lo * den, hi * den - 1);
    return Rational(k(rng), den);
}

/// Every non-empty subset of the atlas when it is small, otherwise singles
/// and adjacent pairs.
inline std::vector<std::vector<SamplingPattern>> atlas_subsets(const PatternAtlas& atlas) {
    const auto all = atlas.patterns();
    std::vector<std::vector<SamplingPattern>> out;
    if (all.size() <= 5) {
        for (unsigned mask = 1; mask < (1u << all.size()); ++mask) {
            std::vector<SamplingPattern> sub;
            for (std::size_t k = 0; k < all.size(); ++k)
                if (mask & (1u << k)) sub.push_back(all[k]);
            out.push_back(std::move(sub));
        }
        return out;
    }
    for (std::size_t k = 0; k < all.size(); ++k) {
        out.push_back({all[k]});
        if (k + 1 < all.size()) out.push_back({all[k], all[k + 1]});
    }
    return out;
}

}  // namespace pcsamp::testing
