#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcsamp/sampler.hpp"
#include "pcsamp/signal.hpp"

namespace pcsamp {

/// Malformed scenario or observation document (bad JSON shape, non-exact
/// number, duplicate or wrong-length observation).
class ScenarioFormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One signal plus, optionally, the patterns observed from it.
///
/// JSON shape:
///   { "T": "1", "regions": [ {"g": "4", "n": 2, "f": "1/4"}, ... ],
///     "observations": "all" | [[2,3], [2,2]] }
/// Rationals are strings ("p/q", integers, or exact decimals); bare JSON
/// integers are accepted too, JSON floats are rejected.
struct Scenario {
    std::string name;
    SignalSpec spec;
    /// nullopt means the complete atlas (keyword "all" or key absent).
    std::optional<std::vector<SamplingPattern>> observations;

    /// Observed patterns, expanding "all" to the atlas.
    std::vector<SamplingPattern> observed_patterns() const;
};

/// Parses and validates. Throws ScenarioFormatError or SpecError.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// Accepts a bare list of integer vectors or an object with an
/// "observations" list. Duplicates and mixed lengths are format errors.
std::vector<SamplingPattern> parse_observations(const nlohmann::json& doc);
std::vector<SamplingPattern> load_observations(const std::filesystem::path& path);

/// Throws InconsistentObservations if some pattern is not in the atlas of
/// `spec`.
void check_against_atlas(const SignalSpec& spec, const std::vector<SamplingPattern>& patterns);

nlohmann::json to_json(const SignalSpec& spec);
nlohmann::json to_json(const std::vector<SamplingPattern>& patterns);

}  // namespace pcsamp
