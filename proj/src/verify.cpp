#include "pcsamp/verify.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "pcsamp/oracle.hpp"
#include "pcsamp/sweep.hpp"

namespace pcsamp {

namespace {

std::string placement_str(const std::vector<Rational>& D) {
    std::string s = "D=(";
    for (std::size_t k = 0; k < D.size(); ++k) s += (k ? "," : "") + D[k].str();
    return s + ")";
}

Estimate maybe_faulted(Estimate est, const Levels& levels, const VerifyOptions& o) {
    return o.inject_midpoint_fault ? inject_midpoint_fault(est, levels) : est;
}

std::vector<Rational> jump_deltas(const Rational& jump) {
    return {jump / 10, -jump / 10, jump / 2, -jump / 2};
}

/// Full pattern set: oracle error constant and equal to the closed form for
/// every reference, and every midpoint perturbation strictly worse.
std::optional<std::string> check_full_minimax(const SignalSpec& spec, const VerifyOptions& o) {
    const Levels levels(spec);
    const ObservationSet obs(enumerate_atlas(spec).patterns(), levels);
    for (int l = 0; l <= spec.m(); ++l) {
        const auto model = infer_model(obs, l);
        const auto est = maybe_faulted(estimate_full(model, levels), levels, o);
        const auto box = independent_box(model);
        const auto cf = closed_form_energy(model, levels);
        const auto wc = worst_case_energy(est, levels, box, o.grid, o.exec);
        if (!cf || wc.max != *cf || wc.min != *cf)
            return "l=" + std::to_string(l) + ": oracle energy in [" + wc.min.str() + ", " + wc.max.str() +
                   "], closed form " + (cf ? cf->str() : "unavailable") + ", worst at " + placement_str(wc.witness);
        for (const auto& cell : est.cells()) {
            if (cell.tag != CellTag::Midpoint) continue;
            const auto report = perturbation_minimax_check(est, levels, box, jump_deltas(levels.jump(cell.governing)),
                                                           o.grid, {cell.lo}, o.exec);
            if (!report.strict()) {
                const auto& bad = report.violations.empty() ? report.ties.front() : report.violations.front();
                return "l=" + std::to_string(l) + ": shifting cell (" + std::to_string(bad.cell_lo) + "," +
                       std::to_string(bad.cell_lo + 1) + ") by " + bad.delta.str() + " gives worst case " +
                       bad.worst.str() + " vs " + report.base.max.str() + " at " + placement_str(bad.witness);
            }
        }
    }
    return std::nullopt;
}

struct PartialStats {
    int closed_form = 0;
    int chains = 0;
    int skipped = 0;  ///< chain references whose joint search exceeds the tuple budget

    std::string str() const {
        return std::to_string(closed_form) + " closed-form references, " + std::to_string(chains) +
               " chain references, " + std::to_string(skipped) + " skipped over budget";
    }
};

/// Cells a chain owns: its interior cells and the midpoint cells of its members.
std::vector<long> chain_cells(const Estimate& est, const UncertaintyModel& model) {
    std::vector<long> out;
    for (const auto& c : est.cells()) {
        bool member = c.tag == CellTag::ChainInterior;
        if (c.tag == CellTag::Midpoint)
            for (const auto* group : {&model.chains.plus, &model.chains.minus})
                for (const auto& ch : *group) member = member || (c.governing >= ch.first() && c.governing <= ch.last());
        if (member) out.push_back(c.lo);
    }
    return out;
}

/// Partial pattern sets without chains: oracle worst case equals the
/// T/2T-weighted closed form. Chains: no perturbation of a chain cell lowers
/// the worst case.
std::optional<std::string> check_partial(const SignalSpec& spec, const std::vector<SamplingPattern>& patterns,
                                         const VerifyOptions& o, PartialStats& stats) {
    const Levels levels(spec);
    const ObservationSet obs(patterns, levels);
    for (int l = 0; l <= spec.m(); ++l) {
        const auto model = infer_model(obs, l);
        if (model.full()) continue;
        const auto est = maybe_faulted(estimate_partial(model, levels), levels, o);
        const auto box = feasible_box(model, obs);
        if (const auto cf = closed_form_energy(model, levels)) {
            const auto wc = worst_case_energy(est, levels, box, o.grid, o.exec);
            ++stats.closed_form;
            if (wc.max != *cf || wc.min != *cf)
                return "l=" + std::to_string(l) + ": oracle energy in [" + wc.min.str() + ", " + wc.max.str() +
                       "], closed form " + cf->str() + ", worst at " + placement_str(wc.witness);
        } else if (!model.chains.empty()) {
            PerturbationReport report;
            try {
                report = perturbation_minimax_check(
                    est, levels, box, {Rational(1, 2), Rational(-1, 2), Rational(1, 10), Rational(-1, 10)}, o.grid,
                    chain_cells(est, model), o.exec, o.chain_tuples);
            } catch (const std::length_error&) {
                ++stats.skipped;
                continue;
            }
            ++stats.chains;
            if (!report.ok()) {
                const auto& bad = report.violations.front();
                return "l=" + std::to_string(l) + ": shifting chain cell (" + std::to_string(bad.cell_lo) + "," +
                       std::to_string(bad.cell_lo + 1) + ") by " + bad.delta.str() + " lowers the worst case to " +
                       bad.worst.str() + " from " + report.base.max.str();
            }
        }
    }
    return std::nullopt;
}

CheckResult make(std::string name, const std::optional<std::string>& failure, std::string ok_detail = {}) {
    return {std::move(name), !failure, failure ? *failure : std::move(ok_detail)};
}

}  // namespace

bool VerificationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Estimate inject_midpoint_fault(const Estimate& est, const Levels& levels) {
    auto gamma = est.gamma();
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        const auto& c = est.cells()[k];
        if (c.tag == CellTag::Midpoint) gamma[k] = levels[c.governing];
    }
    return est.with_gamma(gamma);
}

VerificationReport run_verification(const std::vector<Scenario>& scenarios, const VerifyOptions& o) {
    if (o.grid < 2) throw std::invalid_argument("verify: grid must be at least 2 points per T");
    if (o.trials < 1) throw std::invalid_argument("verify: need at least one trial");
    VerificationReport report;

    for (const auto& sc : scenarios) {
        const std::string tag = "scenario " + (sc.name.empty() ? std::string("<unnamed>") : sc.name) + ": ";
        report.checks.push_back(make(tag + "atlas, counting and full-set round trip", check_signal(sc.spec, o.delta_points)));
        report.checks.push_back(make(tag + "full-set minimax equality and perturbation", check_full_minimax(sc.spec, o)));
        if (sc.observations) {
            PartialStats stats;
            const auto failure = check_partial(sc.spec, *sc.observations, o, stats);
            report.checks.push_back(make(tag + "partial-set oracle checks", failure, stats.str()));
        }
    }

    SpecGenerator gen;
    const auto sweep = exhaustive_consistency_sweep(gen, o.trials, o.seed, o.delta_points, o.exec);
    report.checks.push_back({"random signals: atlas, counting, round trip, reference law", sweep.ok(),
                             sweep.ok() ? std::to_string(sweep.passed) + "/" + std::to_string(sweep.trials) + " passed"
                                        : sweep.failures.front()});

    const auto specs = generate_specs(gen, o.trials, o.seed);
    std::optional<std::string> minimax_failure;
    for (std::size_t t = 0; t < specs.size() && !minimax_failure; ++t)
        if (auto f = check_full_minimax(specs[t], o)) minimax_failure = "trial " + std::to_string(t) + ": " + *f;
    report.checks.push_back(make("random signals: full-set minimax equality and perturbation", minimax_failure,
                                 std::to_string(specs.size()) + " signals, every reference"));

    // Single patterns and adjacent pairs of the atlas as partial observation sets.
    PartialStats stats;
    std::optional<std::string> partial_failure;
    for (std::size_t t = 0; t < specs.size() && !partial_failure; ++t) {
        const auto atlas = enumerate_atlas(specs[t]).patterns();
        for (std::size_t k = 0; k < atlas.size() && !partial_failure; ++k) {
            std::vector<std::vector<SamplingPattern>> subsets{{atlas[k]}};
            if (k + 1 < atlas.size()) subsets.push_back({atlas[k], atlas[k + 1]});
            for (const auto& subset : subsets)
                if (auto f = check_partial(specs[t], subset, o, stats)) {
                    partial_failure = "trial " + std::to_string(t) + ": " + *f;
                    break;
                }
        }
    }
    report.checks.push_back(
        make("random partial sets: U=V closed form and chain perturbations", partial_failure, stats.str()));
    return report;
}

}  // namespace pcsamp
