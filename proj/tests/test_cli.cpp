#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// stderr is folded into the captured output.
Run run(const std::string& args) {
    const std::string cmd = std::string(PCSAMP_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string scenario(const std::string& name) { return std::string(PCSAMP_SCENARIOS) + "/" + name + ".json"; }

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / ("pcsamp_cli_" + name);
    std::ofstream(path) << body;
    return path;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST(Cli, ValidateAcceptsBundledScenarios) {
    for (const char* name : {"running", "chain", "single", "example6"}) {
        const auto r = run("validate " + scenario(name));
        EXPECT_EQ(r.code, 0) << name << ": " << r.out;
    }
}

TEST(Cli, GenericityViolationExitsWithTwo) {
    const auto path = write_temp("generic.json", R"({"regions": [
        {"g": "1", "n": 2, "f": "1/4"}, {"g": "2", "n": 2, "f": "3/4"}]})");
    const auto r = run("validate " + path.string());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("GenericityViolation (i=1,K=1)"), std::string::npos) << r.out;
}

TEST(Cli, FloatInScenarioExitsWithTwo) {
    const auto path = write_temp("float.json", R"({"regions": [{"g": 1, "n": 2, "f": 0.25}]})");
    EXPECT_EQ(run("validate " + path.string()).code, 2);
}

TEST(Cli, InconsistentObservationsExitWithThree) {
    const auto path = write_temp("inconsistent.json", R"({"observations": [[0, 0]]})");
    const auto r = run("infer " + scenario("running") + " --observations " + path.string());
    EXPECT_EQ(r.code, 3) << r.out;
}

TEST(Cli, UnknownOptionExitsWithTwo) {
    EXPECT_EQ(run("patterns " + scenario("running") + " --format xml").code, 2);
    EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, PatternsCsv) {
    const auto r = run("patterns " + scenario("running") + " --format csv");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"delta_lo", "delta_hi", "eta_1", "eta_2"}));
    EXPECT_EQ(rows[1][0], "0");
    EXPECT_EQ(rows[3][1], "1");
}

TEST(Cli, PatternJsonFeedsBackIntoInference) {
    const auto patterns = run("patterns " + scenario("running") + " --format json");
    ASSERT_EQ(patterns.code, 0) << patterns.out;
    const auto path = write_temp("observed.json", patterns.out);
    const auto from_file = run("infer " + scenario("running") + " --format json --observations " + path.string());
    const auto from_all = run("infer " + scenario("running") + " --format json --observations all");
    ASSERT_EQ(from_file.code, 0) << from_file.out;
    EXPECT_EQ(json::parse(from_file.out), json::parse(from_all.out));
}

TEST(Cli, PatternCsvFeedsBackIntoInference) {
    const auto rows = csv_rows(run("patterns " + scenario("example6") + " --format csv").out);
    ASSERT_GT(rows.size(), 1u);
    json list = json::array();
    for (std::size_t k = 1; k < rows.size(); ++k) {
        json eta = json::array();
        for (std::size_t c = 2; c < rows[k].size(); ++c) eta.push_back(std::stoi(rows[k][c]));
        list.push_back(eta);
    }
    const auto path = write_temp("observed_csv.json", list.dump());
    const auto a = run("infer " + scenario("example6") + " --format json --observations " + path.string());
    const auto b = run("infer " + scenario("example6") + " --format json --observations all");
    ASSERT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(json::parse(a.out), json::parse(b.out));
}

TEST(Cli, EstimateCsvColumns) {
    const auto r = run("estimate " + scenario("chain") + " --ref 0 --format csv");
    ASSERT_EQ(r.code, 0) << r.out;
    const auto rows = csv_rows(r.out);
    ASSERT_GE(rows.size(), 2u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"cell_lo", "cell_hi", "value", "provenance"}));
    std::vector<std::string> values;
    for (std::size_t k = 1; k < rows.size(); ++k) values.push_back(rows[k][2]);
    EXPECT_EQ(values, (std::vector<std::string>{"4", "4", "3", "2", "1"}));
}

TEST(Cli, VerifyExitCodes) {
    const auto ok = run("verify " + scenario("running") + " --trials 2 --delta-points 100");
    EXPECT_EQ(ok.code, 0) << ok.out;
    const auto bad = run("verify " + scenario("running") + " --trials 2 --delta-points 100 --inject-midpoint-fault");
    EXPECT_EQ(bad.code, 1) << bad.out;
    EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

TEST(Cli, BuiltInDemo) {
    const auto r = run("demo example6");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("l=0:"), std::string::npos);
}
