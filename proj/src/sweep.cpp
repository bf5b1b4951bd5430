#include "pcsamp/sweep.hpp"

#include <set>
#include <stdexcept>

#include "pcsamp/estimator.hpp"
#include "pcsamp/inference.hpp"
#include "pcsamp/sampler.hpp"

namespace pcsamp {

SignalSpec SpecGenerator::operator()(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> pick_m(min_m, max_m);
    std::uniform_int_distribution<int> pick_n(min_n, max_n);
    std::uniform_int_distribution<long> pick_k(1, f_denominator - 1);
    std::uniform_int_distribution<long> pick_g(amp_lo, amp_hi);
    for (;;) {
        SignalSpec spec;
        const int m = pick_m(rng);
        for (int i = 0; i < m; ++i) {
            const long g = pick_g(rng);
            const int n = pick_n(rng);
            const long k = pick_k(rng);
            spec.regions.push_back({Rational(g), n, Rational(k, f_denominator)});
        }
        try {
            return validate_spec(spec);
        } catch (const SpecError&) {
        }
    }
}

std::vector<SignalSpec> generate_specs(const SpecGenerator& gen, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<SignalSpec> specs;
    specs.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) specs.push_back(gen(rng));
    return specs;
}

namespace {

/// Mismatches at a single Delta_1; returns comparisons made.
std::size_t compare_counts_at(const SignalSpec& spec, const Rational& delta1, std::size_t& mismatches,
                              std::optional<std::string>& first) {
    const int m = spec.m();
    const auto pattern = count_direct(spec, delta1);
    const auto deltas = delta_chain(spec, delta1);
    std::size_t comparisons = 0;

    // Offset of the first sample at or after each region's left edge.
    Rational left(0);
    for (int i = 1; i <= m; ++i) {
        const Rational direct = (left - delta1).ceil() + delta1 - left;
        ++comparisons;
        if (direct != deltas[i - 1]) {
            ++mismatches;
            if (!first) first = "Delta_" + std::to_string(i) + " at Delta_1=" + delta1.str();
        }
        left += spec.length(i);
    }

    for (int i = 1; i <= m; ++i)
        for (int K = 0; i + K <= m; ++K) {
            ++comparisons;
            const long formula = cumulative_count(spec, i, K, deltas[i - 1]);
            const long direct = pattern.sum(i, i + K);
            if (formula != direct) {
                ++mismatches;
                if (!first)
                    first = "(i=" + std::to_string(i) + ",K=" + std::to_string(K) + ") at Delta_1=" + delta1.str() +
                            ": formula " + std::to_string(formula) + " vs direct " + std::to_string(direct);
            }
        }
    return comparisons;
}

std::vector<Rational> sweep_points(const SignalSpec& spec, long points) {
    std::vector<Rational> xs;
    xs.reserve(static_cast<std::size_t>(points + spec.m()));
    for (long k = 0; k < points; ++k) xs.emplace_back(k, points);
    for (int k = 1; k <= spec.m(); ++k) xs.push_back(drop_threshold(spec, k));
    return xs;
}

}  // namespace

CountingSweep proposition_sweep(const SignalSpec& spec, long points, Execution exec) {
    if (points < 1) throw std::invalid_argument("proposition_sweep: need at least one point");
    const auto xs = sweep_points(spec, points);
    const auto n = static_cast<long>(xs.size());
    std::vector<std::size_t> comparisons(xs.size(), 0);
    std::vector<std::size_t> mismatches(xs.size(), 0);
    std::vector<std::optional<std::string>> firsts(xs.size());

    if (exec == Execution::Serial) {
        for (long k = 0; k < n; ++k)
            comparisons[k] = compare_counts_at(spec, xs[k], mismatches[k], firsts[k]);
    } else {
#pragma omp parallel for schedule(static)
        for (long k = 0; k < n; ++k)
            comparisons[k] = compare_counts_at(spec, xs[k], mismatches[k], firsts[k]);
    }

    CountingSweep out;
    out.points = xs.size();
    for (std::size_t k = 0; k < xs.size(); ++k) {
        out.comparisons += comparisons[k];
        out.mismatches += mismatches[k];
        if (!out.first_mismatch && firsts[k]) out.first_mismatch = firsts[k];
    }
    return out;
}

std::optional<std::string> check_signal(const SignalSpec& spec, long delta_points) {
    try {
        const int m = spec.m();
        const auto atlas = enumerate_atlas(spec);
        if (static_cast<int>(atlas.cells.size()) != m + 1)
            return "atlas has " + std::to_string(atlas.cells.size()) + " cells, expected " + std::to_string(m + 1);
        const auto patterns = atlas.patterns();
        if (std::set<SamplingPattern>(patterns.begin(), patterns.end()).size() != patterns.size())
            return std::string("atlas patterns are not distinct");
        for (std::size_t c = 0; c < atlas.cells.size(); ++c) {
            const auto& cell = atlas.cells[c];
            const Rational mid = (cell.delta_lo + cell.delta_hi) / 2;
            if (count_direct(spec, mid) != cell.pattern || count_direct(spec, cell.delta_lo) != cell.pattern)
                return "atlas cell [" + cell.delta_lo.str() + "," + cell.delta_hi.str() + ") disagrees with direct count";
            if (c > 0 && atlas.cells[c - 1].pattern == cell.pattern) return std::string("adjacent atlas cells repeat");
            for (int i = 1; i <= m; ++i)
                if (cell.pattern[i] != spec.region(i).n && cell.pattern[i] != spec.region(i).n - 1)
                    return "eta_" + std::to_string(i) + " outside {n-1, n}";
        }

        const auto sweep = proposition_sweep(spec, delta_points, Execution::Serial);
        if (sweep.mismatches != 0) return "counting mismatch " + *sweep.first_mismatch;

        const Levels levels(spec);
        const ObservationSet obs(patterns, levels);
        int argmin = -1;
        Rational best;
        for (int l = 0; l <= m; ++l) {
            const auto model = infer_model(obs, l);
            if (!model.full()) return "full pattern set left 2T uncertainty at l=" + std::to_string(l);
            const auto D = translate(spec, l).D;
            for (int i = 0; i <= m; ++i) {
                if (i == l) continue;
                const auto& g = model.G[i];
                if (g.width() != 1 || !(Rational(g.lo) < D[i] && D[i] < Rational(g.hi)))
                    return "l=" + std::to_string(l) + ": D_" + std::to_string(i) + "=" + D[i].str() +
                           " not inside width-1 interval";
            }
            const auto est = estimate_full(model, levels);
            const auto truth = truth_function(spec, l);
            for (long n = est.lo() - 1; n <= est.hi() + 1; ++n)
                if (est.at(Rational(n)) != truth(Rational(n)))
                    return "l=" + std::to_string(l) + ": estimate differs from truth at t=" + std::to_string(n);
            if (!(estimate_partial(model, levels) == est))
                return "l=" + std::to_string(l) + ": partial estimator differs on a full pattern set";
            const auto energy = closed_form_energy(model, levels);
            if (!energy) return "closed form unavailable on a full pattern set";
            if (argmin < 0 || *energy < best) {
                argmin = l;
                best = *energy;
            }
        }
        if (argmin != best_reference(levels))
            return "energy argmin l=" + std::to_string(argmin) + " but best_reference=" +
                   std::to_string(best_reference(levels));
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
    return std::nullopt;
}

SweepSummary exhaustive_consistency_sweep(const SpecGenerator& gen, int trials, std::uint64_t seed,
                                          long delta_points, Execution exec) {
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    const auto specs = generate_specs(gen, trials, seed);
    std::vector<std::optional<std::string>> results(specs.size());

    if (exec == Execution::Serial) {
        for (int t = 0; t < trials; ++t) results[t] = check_signal(specs[t], delta_points);
    } else {
#pragma omp parallel for schedule(dynamic, 1)
        for (int t = 0; t < trials; ++t) results[t] = check_signal(specs[t], delta_points);
    }

    SweepSummary summary;
    summary.trials = trials;
    for (int t = 0; t < trials; ++t) {
        if (!results[t]) {
            ++summary.passed;
            continue;
        }
        summary.failures.push_back("trial " + std::to_string(t) + ": " + *results[t]);
        if (!summary.first_counterexample) summary.first_counterexample = specs[t];
    }
    return summary;
}

}  // namespace pcsamp
