#include <gtest/gtest.h>

#include "pcsamp/scenario.hpp"
#include "support.hpp"

using namespace pcsamp;
using namespace pcsamp::testing;
using nlohmann::json;

namespace {

json running_doc() {
    return json::parse(R"({
        "name": "running", "T": "1/2",
        "regions": [ {"g": "4", "n": 2, "f": "1/4"}, {"g": 2, "n": 3, "f": "0.5"} ]
    })");
}

}  // namespace

TEST(Scenario, ParsesExactValues) {
    const auto sc = parse_scenario(running_doc());
    EXPECT_EQ(sc.name, "running");
    EXPECT_EQ(sc.spec.T, Rational(1, 2));
    ASSERT_EQ(sc.spec.m(), 2);
    EXPECT_EQ(sc.spec.region(2).g, Rational(2));
    EXPECT_EQ(sc.spec.region(2).f, Rational(1, 2));
    EXPECT_FALSE(sc.observations);
    EXPECT_EQ(sc.observed_patterns().size(), 3u);
}

TEST(Scenario, ObservationKeywordAndLists) {
    auto doc = running_doc();
    doc["observations"] = "all";
    EXPECT_FALSE(parse_scenario(doc).observations);
    doc["observations"] = json::parse("[[2,3],[2,2]]");
    const auto sc = parse_scenario(doc);
    ASSERT_TRUE(sc.observations);
    EXPECT_EQ(sc.observations->size(), 2u);
    EXPECT_EQ(sc.observed_patterns().front(), pat({2, 3}));
}

TEST(Scenario, RejectsInexactOrMalformedInput) {
    const auto expect_format_error = [](json doc) { EXPECT_THROW(parse_scenario(doc), ScenarioFormatError) << doc; };
    auto doc = running_doc();
    doc["regions"][0]["f"] = 0.25;
    expect_format_error(doc);

    doc = running_doc();
    doc["T"] = "abc";
    expect_format_error(doc);

    doc = running_doc();
    doc.erase("regions");
    expect_format_error(doc);

    doc = running_doc();
    doc["regions"][0]["n"] = "2";
    expect_format_error(doc);

    doc = running_doc();
    doc["observations"] = "some";
    expect_format_error(doc);

    doc = running_doc();
    doc["observations"] = json::parse("[[2,3],[2,3]]");
    expect_format_error(doc);

    doc = running_doc();
    doc["observations"] = json::parse("[[2,3,1]]");
    expect_format_error(doc);

    doc = running_doc();
    doc["observations"] = json::parse("[[2,3],[2]]");
    expect_format_error(doc);
}

TEST(Scenario, InvalidSignalsRaiseSpecError) {
    auto doc = running_doc();
    doc["regions"][1]["f"] = "3/4";
    EXPECT_THROW(parse_scenario(doc), SpecError);
    doc = running_doc();
    doc["regions"][1]["g"] = "4";
    EXPECT_THROW(parse_scenario(doc), SpecError);
}

TEST(Scenario, AtlasMembershipCheck) {
    const auto spec = running_spec();
    EXPECT_NO_THROW(check_against_atlas(spec, enumerate_atlas(spec).patterns()));
    EXPECT_THROW(check_against_atlas(spec, {pat({0, 0})}), InconsistentObservations);
}

TEST(Scenario, JsonRoundTrip) {
    for (const auto& spec : random_specs(20)) {
        const auto back = parse_scenario(to_json(spec)).spec;
        ASSERT_EQ(back.m(), spec.m());
        for (int i = 1; i <= spec.m(); ++i) {
            ASSERT_EQ(back.region(i).g, spec.region(i).g);
            ASSERT_EQ(back.region(i).n, spec.region(i).n);
            ASSERT_EQ(back.region(i).f, spec.region(i).f);
        }
        const auto patterns = enumerate_atlas(spec).patterns();
        ASSERT_EQ(parse_observations(to_json(patterns)), patterns);
        ASSERT_EQ(parse_observations(json{{"observations", to_json(patterns)}}), patterns);
    }
}

TEST(Scenario, BundledFilesLoad) {
    for (const char* name : {"running", "chain", "example6", "single"}) {
        const auto sc = load_scenario(std::string(PCSAMP_SCENARIOS) + "/" + name + ".json");
        EXPECT_EQ(sc.name, name);
    }
    EXPECT_THROW(load_scenario(std::string(PCSAMP_SCENARIOS) + "/missing.json"), ScenarioFormatError);
}
