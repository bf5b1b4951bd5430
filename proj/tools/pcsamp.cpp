// pcsamp: sampling-pattern atlas, discontinuity inference and minimax
// estimation for piecewise constant signals.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcsamp/errors.hpp"
#include "pcsamp/estimator.hpp"
#include "pcsamp/inference.hpp"
#include "pcsamp/sampler.hpp"
#include "pcsamp/scenario.hpp"
#include "pcsamp/verify.hpp"

using namespace pcsamp;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidScenario = 2;
constexpr int kExitInconsistent = 3;

struct Output {
    std::string format = "table";
    bool decimal = false;
    Rational T{1};

    std::string num(const Rational& x) const { return decimal ? x.decimal(12) : x.str(); }
    std::string phys(const Rational& x) const { return num(x * T); }
};

class Table {
public:
    explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& os) const {
        std::vector<std::size_t> width(rows_.front().size(), 0);
        for (const auto& r : rows_)
            for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
        for (const auto& r : rows_) {
            for (std::size_t c = 0; c < r.size(); ++c) {
                os << r[c];
                if (c + 1 < r.size()) os << std::string(width[c] - r[c].size() + 2, ' ');
            }
            os << '\n';
        }
    }

    void print_csv(std::ostream& os) const {
        for (const auto& r : rows_) {
            for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << r[c];
            os << '\n';
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string eta_str(const SamplingPattern& p) { return p.str(); }

ObservationSet observation_set(const Scenario& sc, const std::string& observations) {
    std::vector<SamplingPattern> patterns;
    if (observations.empty())
        patterns = sc.observed_patterns();
    else if (observations == "all")
        patterns = enumerate_atlas(sc.spec).patterns();
    else
        patterns = load_observations(observations);
    if (!patterns.empty() && patterns.front().m() != sc.spec.m())
        throw ScenarioFormatError("observations must have one count per region");
    check_against_atlas(sc.spec, patterns);
    return {patterns, Levels(sc.spec)};
}

void check_reference(const Scenario& sc, int l) {
    if (l < 0 || l > sc.spec.m())
        throw std::invalid_argument("--ref must lie in [0, " + std::to_string(sc.spec.m()) + "]");
}

// ---------------------------------------------------------------- validate

int cmd_validate(const Scenario& sc, const Output&) {
    std::cout << "valid: m=" << sc.spec.m() << ", T=" << sc.spec.T << ", "
              << (sc.observations ? std::to_string(sc.observations->size()) + " observed patterns"
                                  : std::string("observations: all"))
              << '\n';
    if (sc.observations) check_against_atlas(sc.spec, *sc.observations);
    return kExitOk;
}

// ---------------------------------------------------------------- patterns

int cmd_patterns(const Scenario& sc, const Output& out) {
    const auto atlas = enumerate_atlas(sc.spec);
    const int m = sc.spec.m();
    if (out.format == "json") {
        json cells = json::array();
        for (const auto& c : atlas.cells)
            cells.push_back({{"delta_lo", out.num(c.delta_lo)}, {"delta_hi", out.num(c.delta_hi)}, {"eta", c.pattern.eta}});
        std::cout << json{{"m", m}, {"T", sc.spec.T.str()}, {"cells", cells}, {"observations", to_json(atlas.patterns())}}
                         .dump(2)
                  << '\n';
        return kExitOk;
    }
    if (out.format == "csv") {
        std::vector<std::string> header{"delta_lo", "delta_hi"};
        for (int i = 1; i <= m; ++i) header.push_back("eta_" + std::to_string(i));
        Table t(header);
        for (const auto& c : atlas.cells) {
            std::vector<std::string> row{out.num(c.delta_lo), out.num(c.delta_hi)};
            for (int v : c.pattern.eta) row.push_back(std::to_string(v));
            t.add(row);
        }
        t.print_csv(std::cout);
        return kExitOk;
    }
    Table t({"delta_lo/T", "delta_hi/T", "eta"});
    for (const auto& c : atlas.cells) t.add({out.num(c.delta_lo), out.num(c.delta_hi), eta_str(c.pattern)});
    t.print(std::cout);
    std::cout << atlas.cells.size() << " patterns\n";
    return kExitOk;
}

// ---------------------------------------------------------------- infer

json model_json(const UncertaintyModel& model, const Scenario& sc, const Output& out) {
    const auto D = translate(sc.spec, model.l).D;
    json rows = json::array();
    for (int i = 0; i <= model.m(); ++i) {
        const auto& g = model.G[i];
        rows.push_back({{"index", i},
                        {"C", model.C[i]},
                        {"class", i == model.l ? "reference" : model.in_U[i] ? "U" : "Uc"},
                        {"G_L", g.lo},
                        {"G_R", g.hi},
                        {"width", g.width()},
                        {"G_L_phys", out.phys(Rational(g.lo))},
                        {"G_R_phys", out.phys(Rational(g.hi))},
                        {"true_D", out.num(D[i])}});
    }
    json chains = json::array();
    for (const auto* group : {&model.chains.plus, &model.chains.minus})
        for (const auto& c : *group)
            chains.push_back({{"direction", c.increasing ? "+" : "-"},
                              {"anchor", c.anchor},
                              {"lambda", c.lambda},
                              {"B", c.B},
                              {"first", c.first()},
                              {"last", c.last()}});
    return {{"l", model.l}, {"discontinuities", rows}, {"chains", chains}, {"V", model.chains.V}};
}

void print_model(const UncertaintyModel& model, const Scenario& sc, const Output& out) {
    const auto D = translate(sc.spec, model.l).D;
    if (out.format == "csv") {
        Table t({"index", "C", "class", "G_L", "G_R", "width"});
        for (int i = 0; i <= model.m(); ++i)
            t.add({std::to_string(i), std::to_string(model.C[i]),
                   i == model.l ? "reference" : model.in_U[i] ? "U" : "Uc", std::to_string(model.G[i].lo),
                   std::to_string(model.G[i].hi), std::to_string(model.G[i].width())});
        t.print_csv(std::cout);
        return;
    }
    std::cout << "reference l=" << model.l << '\n';
    Table t({"i", "C_i", "class", "interval/T", "width", "interval (physical)", "true D_i/T"});
    for (int i = 0; i <= model.m(); ++i) {
        const auto& g = model.G[i];
        const bool ref = i == model.l;
        t.add({std::to_string(i), std::to_string(model.C[i]), ref ? "reference" : model.in_U[i] ? "U (2T)" : "Uc (T)",
               ref ? "0" : "(" + std::to_string(g.lo) + "," + std::to_string(g.hi) + ")",
               ref ? "0" : std::to_string(g.width()) + "T",
               ref ? "0" : "(" + out.phys(Rational(g.lo)) + "," + out.phys(Rational(g.hi)) + ")", out.num(D[i])});
    }
    t.print(std::cout);
    for (const auto* group : {&model.chains.plus, &model.chains.minus})
        for (const auto& c : *group)
            std::cout << "chain" << (c.increasing ? "+" : "-") << " anchor=" << c.anchor << " lambda=" << c.lambda
                      << " members=" << c.first() << ".." << c.last() << " B=" << c.B << '\n';
    if (!model.chains.V.empty()) {
        std::cout << "V = {";
        for (std::size_t k = 0; k < model.chains.V.size(); ++k) std::cout << (k ? "," : "") << model.chains.V[k];
        std::cout << "}\n";
    }
}

int cmd_infer(const Scenario& sc, const Output& out, std::optional<int> ref, const std::string& observations) {
    const auto obs = observation_set(sc, observations);
    std::vector<int> refs;
    if (ref) {
        check_reference(sc, *ref);
        refs.push_back(*ref);
    } else {
        for (int l = 0; l <= sc.spec.m(); ++l) refs.push_back(l);
    }
    if (out.format == "json") {
        json models = json::array();
        for (int l : refs) models.push_back(model_json(infer_model(obs, l), sc, out));
        std::cout << json{{"observations", to_json(obs.patterns())}, {"models", models}}.dump(2) << '\n';
        return kExitOk;
    }
    for (int l : refs) print_model(infer_model(obs, l), sc, out);
    return kExitOk;
}

// ---------------------------------------------------------------- estimate

std::string energy_text(const std::optional<Rational>& e, const Output& out) {
    return e ? out.num(*e) : std::string("unavailable: chains present");
}

int estimate_one(const Scenario& sc, const Output& out, int l, const ObservationSet& obs) {
    const Levels levels(sc.spec);
    const auto model = infer_model(obs, l);
    const auto est = model.full() ? estimate_full(model, levels) : estimate_partial(model, levels);
    const auto energy = closed_form_energy(model, levels);
    const auto unavailable = [&] {
        return model.chains.empty() ? std::string("unavailable: overlapping intervals")
                                    : std::string("unavailable: chains present");
    };

    if (out.format == "csv") {
        Table t({"cell_lo", "cell_hi", "value", "provenance"});
        for (const auto& c : est.cells())
            t.add({out.num(Rational(c.lo)), out.num(Rational(c.hi())), out.num(c.value), to_string(c.tag)});
        t.print_csv(std::cout);
        return kExitOk;
    }
    if (out.format == "json") {
        json cells = json::array();
        for (const auto& c : est.cells())
            cells.push_back({{"cell_lo", c.lo},
                             {"cell_hi", c.hi()},
                             {"cell_lo_phys", out.phys(Rational(c.lo))},
                             {"cell_hi_phys", out.phys(Rational(c.hi()))},
                             {"value", out.num(c.value)},
                             {"provenance", to_string(c.tag)},
                             {"governing", c.governing}});
        json doc{{"l", l}, {"full_pattern_set", model.full()}, {"cells", cells}};
        if (energy) {
            doc["closed_form_energy"] = out.num(*energy);
            doc["closed_form_energy_phys"] = out.phys(*energy);
        } else {
            doc["closed_form_energy"] = nullptr;
            doc["note"] = unavailable();
        }
        std::cout << doc.dump(2) << '\n';
        return kExitOk;
    }

    std::cout << "estimate for reference l=" << l << (model.full() ? " (full pattern set)" : " (partial pattern set)")
              << '\n';
    Table t({"cell/T", "cell (physical)", "value", "provenance"});
    for (const auto& c : est.cells())
        t.add({"(" + std::to_string(c.lo) + "," + std::to_string(c.hi()) + ")",
               "(" + out.phys(Rational(c.lo)) + "," + out.phys(Rational(c.hi())) + ")", out.num(c.value),
               std::string(to_string(c.tag)) + (c.governing >= 0 ? " [" + std::to_string(c.governing) + "]" : "")});
    t.print(std::cout);
    std::cout << "zero outside (" << est.lo() << "," << est.hi() << ")\n";
    if (energy)
        std::cout << "closed-form energy: " << out.num(*energy) << " g^2 T  (" << out.phys(*energy) << " physical)\n";
    else
        std::cout << "closed-form energy: " << unavailable() << '\n';
    return kExitOk;
}

int estimate_sweep(const Scenario& sc, const Output& out, const ObservationSet& obs) {
    const Levels levels(sc.spec);
    const int m = sc.spec.m();
    std::vector<std::optional<Rational>> energies;
    int argmin = -1;
    bool full = true;
    for (int l = 0; l <= m; ++l) {
        const auto model = infer_model(obs, l);
        full = full && model.full();
        energies.push_back(closed_form_energy(model, levels));
        if (energies.back() && (argmin < 0 || *energies.back() < *energies[argmin])) argmin = l;
    }
    const std::optional<int> law = full ? std::optional<int>(best_reference(levels)) : std::nullopt;

    if (out.format == "json") {
        json rows = json::array();
        for (int l = 0; l <= m; ++l)
            rows.push_back({{"l", l}, {"energy", energies[l] ? json(out.num(*energies[l])) : json(nullptr)}});
        json doc{{"energies", rows}, {"argmin", argmin}};
        doc["best_reference"] = law ? json(*law) : json(nullptr);
        doc["agree"] = law ? json(*law == argmin) : json(nullptr);
        std::cout << doc.dump(2) << '\n';
        return kExitOk;
    }
    if (out.format == "csv") {
        Table t({"l", "energy"});
        for (int l = 0; l <= m; ++l) t.add({std::to_string(l), energies[l] ? out.num(*energies[l]) : ""});
        t.print_csv(std::cout);
        return kExitOk;
    }
    Table t({"l", "closed-form energy (g^2 T)", "jump |g_l - g_{l+1}|"});
    for (int l = 0; l <= m; ++l) t.add({std::to_string(l), energy_text(energies[l], out), out.num(levels.jump(l).abs())});
    t.print(std::cout);
    std::cout << "argmin energy: l=" << argmin << '\n';
    if (law)
        std::cout << "largest jump:  l=" << *law << (*law == argmin ? "  (agree)" : "  (DISAGREE)") << '\n';
    else
        std::cout << "largest-jump rule applies to full pattern sets only\n";
    return kExitOk;
}

int cmd_estimate(const Scenario& sc, const Output& out, std::optional<int> ref, bool sweep,
                 const std::string& observations) {
    const auto obs = observation_set(sc, observations);
    if (sweep || !ref) return estimate_sweep(sc, out, obs);
    check_reference(sc, *ref);
    return estimate_one(sc, out, *ref, obs);
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::vector<std::string>& files, const VerifyOptions& options) {
    std::vector<Scenario> scenarios;
    for (const auto& f : files) scenarios.push_back(load_scenario(f));
    const auto report = run_verification(scenarios, options);
    for (const auto& c : report.checks)
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  -- " + c.detail) << '\n';
    std::cout << (report.ok() ? "all checks passed" : "verification FAILED") << '\n';
    return report.ok() ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------- demo

Scenario example6_scenario() {
    SignalSpec spec;
    spec.regions = {{Rational(3), 3, Rational(1, 5)}, {Rational(5), 3, Rational(2, 7)}, {Rational(2), 3, Rational(1, 3)}};
    spec = validate_spec(spec);
    const auto [upper, lower] = last_region_split(enumerate_atlas(spec));
    return {"example6", spec, std::vector<SamplingPattern>{upper, lower}};
}

int cmd_demo(const std::string& which, const Output& out) {
    if (which != "example6") throw std::invalid_argument("unknown demo \"" + which + "\" (available: example6)");
    const auto sc = example6_scenario();
    const ObservationSet obs(*sc.observations, Levels(sc.spec));
    std::cout << "m=3 signal, observed patterns";
    for (const auto& p : obs.patterns()) std::cout << ' ' << p.str();
    std::cout << "\n";
    for (int l : {0, 3}) {
        const auto model = infer_model(obs, l);
        std::cout << "l=" << l << ":";
        for (int i = 0; i <= 3; ++i) {
            if (i == l) continue;
            std::cout << "  D_" << i << " width " << model.G[i].width() << "T";
        }
        std::cout << '\n';
    }
    if (out.format != "table") std::cout << to_json(sc.spec).dump() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pcsamp: sampling patterns, discontinuity uncertainty and minimax estimates for piecewise "
                 "constant signals"};
    app.require_subcommand(1);

    Output out;
    std::string scenario_path;
    std::string observations;
    std::optional<int> ref;
    bool sweep = false;

    const auto add_common = [&](CLI::App* sub, bool needs_scenario) {
        if (needs_scenario) sub->add_option("scenario", scenario_path, "Scenario JSON file")->required();
        sub->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
        sub->add_flag("--float", out.decimal, "Render numbers as decimals (12 significant digits)");
    };

    auto* validate = app.add_subcommand("validate", "Check a scenario against the signal invariants");
    add_common(validate, true);
    auto* patterns = app.add_subcommand("patterns", "List every achievable sampling pattern");
    add_common(patterns, true);
    auto* infer = app.add_subcommand("infer", "Uncertainty intervals per reference discontinuity");
    add_common(infer, true);
    infer->add_option("--ref", ref, "Reference discontinuity l (default: all)");
    infer->add_option("--observations", observations, "\"all\" or an observation JSON file");

    auto* estimate = app.add_subcommand("estimate", "Minimax estimate and closed-form error energy");
    add_common(estimate, true);
    estimate->add_option("--ref", ref, "Reference discontinuity l");
    estimate->add_flag("--sweep", sweep, "Energy for every reference and the best-reference check");
    estimate->add_option("--observations", observations, "\"all\" or an observation JSON file");

    auto* sweep_ref = app.add_subcommand("sweep-ref", "Alias for estimate --sweep");
    add_common(sweep_ref, true);
    sweep_ref->add_option("--observations", observations, "\"all\" or an observation JSON file");

    VerifyOptions vopts;
    std::vector<std::string> verify_files;
    std::optional<std::uint64_t> seed;
    auto* verify = app.add_subcommand("verify", "Run the oracle property suite");
    verify->add_option("scenarios", verify_files, "Scenario JSON files");
    verify->add_option("--grid", vopts.grid, "Oracle grid points per T")->check(CLI::Range(2L, 100000L));
    verify->add_option("--trials", vopts.trials, "Random signals")->check(CLI::Range(1, 1000000));
    verify->add_option("--seed", seed, "Random seed (env PCSAMP_SEED)");
    verify->add_option("--delta-points", vopts.delta_points, "Delta_1 values per counting sweep")
        ->check(CLI::Range(1L, 10000000L));
    verify->add_flag("--inject-midpoint-fault", vopts.inject_midpoint_fault)->group("");

    std::string demo_name;
    auto* demo = app.add_subcommand("demo", "Built-in worked examples");
    demo->add_option("name", demo_name, "Demo name (example6)")->required();
    demo->add_option("--format", out.format)->check(CLI::IsMember({"table", "csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidScenario;
    }

    try {
        if (*verify) {
            if (seed)
                vopts.seed = *seed;
            else if (const char* env = std::getenv("PCSAMP_SEED"))
                vopts.seed = std::stoull(env);
            return cmd_verify(verify_files, vopts);
        }
        if (*demo) return cmd_demo(demo_name, out);

        const Scenario sc = load_scenario(scenario_path);
        out.T = sc.spec.T;
        if (*validate) return cmd_validate(sc, out);
        if (*patterns) return cmd_patterns(sc, out);
        if (*infer) return cmd_infer(sc, out, ref, observations);
        if (*estimate) return cmd_estimate(sc, out, ref, sweep, observations);
        if (*sweep_ref) return cmd_estimate(sc, out, std::nullopt, true, observations);
    } catch (const InconsistentObservations& e) {
        std::cerr << "InconsistentObservations: " << e.what() << '\n';
        return kExitInconsistent;
    } catch (const SpecError& e) {
        std::cerr << e.what() << '\n';
        return kExitInvalidScenario;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidScenario;
    }
    return kExitOk;
}
