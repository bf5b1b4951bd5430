#include "pcsamp/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "pcsamp/errors.hpp"

namespace pcsamp {

using nlohmann::json;

namespace {

Rational rational_field(const json& v, const std::string& what) {
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ScenarioFormatError(what + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw ScenarioFormatError(what + " must be an exact rational string like \"3/4\"");
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioFormatError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ScenarioFormatError(path.string() + ": " + e.what());
    }
}

}  // namespace

std::vector<SamplingPattern> Scenario::observed_patterns() const {
    if (observations) return *observations;
    return enumerate_atlas(spec).patterns();
}

std::vector<SamplingPattern> parse_observations(const json& doc) {
    const json& list = doc.is_object() && doc.contains("observations") ? doc.at("observations") : doc;
    if (!list.is_array() || list.empty()) throw ScenarioFormatError("observations must be a non-empty list");
    std::vector<SamplingPattern> out;
    for (const auto& row : list) {
        if (!row.is_array() || row.empty()) throw ScenarioFormatError("each observation must be a list of counts");
        SamplingPattern p;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw ScenarioFormatError("sample counts must be integers");
            p.eta.push_back(v.get<int>());
        }
        if (!out.empty() && p.m() != out.front().m())
            throw ScenarioFormatError("observation " + p.str() + " has a different length");
        out.push_back(std::move(p));
    }
    std::set<SamplingPattern> seen(out.begin(), out.end());
    if (seen.size() != out.size()) throw ScenarioFormatError("observations must be distinct");
    return out;
}

std::vector<SamplingPattern> load_observations(const std::filesystem::path& path) {
    return parse_observations(read_json(path));
}

Scenario parse_scenario(const json& doc) {
    if (!doc.is_object()) throw ScenarioFormatError("scenario must be a JSON object");
    Scenario sc;
    if (doc.contains("name")) sc.name = doc.at("name").get<std::string>();
    sc.spec.T = doc.contains("T") ? rational_field(doc.at("T"), "T") : Rational(1);
    if (!doc.contains("regions") || !doc.at("regions").is_array())
        throw ScenarioFormatError("scenario needs a \"regions\" list");
    int idx = 0;
    for (const auto& r : doc.at("regions")) {
        ++idx;
        const std::string where = "region " + std::to_string(idx);
        if (!r.is_object() || !r.contains("g") || !r.contains("n") || !r.contains("f"))
            throw ScenarioFormatError(where + " needs g, n and f");
        if (!r.at("n").is_number_integer()) throw ScenarioFormatError(where + ": n must be an integer");
        sc.spec.regions.push_back(
            {rational_field(r.at("g"), where + ".g"), r.at("n").get<int>(), rational_field(r.at("f"), where + ".f")});
    }
    sc.spec = validate_spec(sc.spec);

    if (doc.contains("observations")) {
        const auto& o = doc.at("observations");
        if (o.is_string()) {
            if (o.get<std::string>() != "all") throw ScenarioFormatError("observations must be \"all\" or a list");
        } else {
            sc.observations = parse_observations(o);
            if (sc.observations->front().m() != sc.spec.m())
                throw ScenarioFormatError("observations must have one count per region");
        }
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    Scenario sc = parse_scenario(read_json(path));
    if (sc.name.empty()) sc.name = path.stem().string();
    return sc;
}

void check_against_atlas(const SignalSpec& spec, const std::vector<SamplingPattern>& patterns) {
    const auto atlas = enumerate_atlas(spec).patterns();
    for (const auto& p : patterns)
        if (std::find(atlas.begin(), atlas.end(), p) == atlas.end())
            throw InconsistentObservations("pattern " + p.str() + " cannot be produced by this signal");
}

json to_json(const SignalSpec& spec) {
    json regions = json::array();
    for (const auto& r : spec.regions) regions.push_back({{"g", r.g.str()}, {"n", r.n}, {"f", r.f.str()}});
    return {{"T", spec.T.str()}, {"regions", regions}};
}

json to_json(const std::vector<SamplingPattern>& patterns) {
    json list = json::array();
    for (const auto& p : patterns) list.push_back(p.eta);
    return list;
}

}  // namespace pcsamp
