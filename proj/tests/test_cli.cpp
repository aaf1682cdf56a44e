#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace polycube::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "polycube");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.push_back("--json");
    const auto r = run_cli(args);
    auto j = json::parse(r.out);
    EXPECT_EQ(j["exit_code"].get<int>(), r.code);
    return j;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "polycube_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(Duration, Parsing) {
    using std::chrono::milliseconds;
    EXPECT_EQ(parse_duration("600s"), milliseconds(600000));
    EXPECT_EQ(parse_duration("10m"), milliseconds(600000));
    EXPECT_EQ(parse_duration("1.5h"), milliseconds(5400000));
    EXPECT_EQ(parse_duration("250ms"), milliseconds(250));
    EXPECT_EQ(parse_duration("2"), milliseconds(2000));
    EXPECT_THROW(parse_duration("soon"), std::invalid_argument);
    EXPECT_THROW(parse_duration("0s"), std::invalid_argument);
    EXPECT_THROW(parse_duration("5d"), std::invalid_argument);
}

TEST(Digest, KnownValues) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Cli, ValidateCatalog) {
    const auto j = run_json({"validate", "--shape", "P44"});
    EXPECT_EQ(j["exit_code"], 0);
    EXPECT_EQ(j["result"]["valid"], true);
    EXPECT_EQ(j["result"]["cubes"], 44);
    const auto k = run_json({"validate", "--shape", "P222"});
    EXPECT_EQ(k["result"]["euler_characteristic"], 2);
}

TEST(Cli, ValidateBadFile) {
    const auto path = scratch("bad.json");
    std::ofstream(path) << R"({"cubes": [[0,0,0],[1,1,0]]})";
    const auto j = run_json({"validate", path.string()});
    EXPECT_EQ(j["exit_code"], kClaimFailed);
    EXPECT_EQ(j["result"]["valid"], false);
    EXPECT_EQ(j["result"]["error"]["kind"], "NonManifoldEdge");
}

TEST(Cli, InputErrors) {
    EXPECT_EQ(run_cli({"validate", "/nonexistent/x.json"}).code, kInputError);
    const auto path = scratch("garbage.json");
    std::ofstream(path) << "not json";
    EXPECT_EQ(run_cli({"info", "--input", path.string()}).code, kInputError);
    EXPECT_EQ(run_cli({"info", "--shape", "Nope"}).code, kInputError);
    EXPECT_EQ(run_cli({"ham-path", "--shape", "Cube", "--budget", "soon"}).code, kInputError);
    EXPECT_EQ(run_cli({"frobnicate"}).code, kInputError);
    EXPECT_EQ(run_cli({"reproduce", "lemma99"}).code, kInputError);
}

TEST(Cli, Info) {
    const auto p14 = run_json({"info", "--shape", "P14"});
    EXPECT_EQ(p14["result"]["flat_vertices"], 3);
    EXPECT_EQ(p14["result"]["parity"]["imbalance"], 2);
    const auto p44 = run_json({"info", "--shape", "P44"});
    EXPECT_EQ(p44["result"]["flat_vertices"], 0);
    EXPECT_EQ(p44["result"]["parity"]["imbalance"], 2);
    EXPECT_FALSE(p44["result"]["obstruction"].is_null());
    const auto p6 = run_json({"info", "--shape", "P6"});
    EXPECT_EQ(p6["result"]["flat_vertices"], 0);
    EXPECT_EQ(p6["result"]["dual_tree"], true);
}

TEST(Cli, HamPathPayload) {
    const auto j = run_json({"ham-path", "--shape", "Cube"});
    EXPECT_EQ(j["result"]["result"], "found");
    EXPECT_EQ(j["result"]["path"].size(), 8u);
    EXPECT_TRUE(j["stats"].contains("expansions"));
    EXPECT_TRUE(j["stats"].contains("elapsed_ms"));
    const auto p44 = run_json({"ham-path", "--shape", "P44"});
    EXPECT_EQ(p44["result"]["result"], "absent");
    EXPECT_EQ(p44["result"]["certificate"]["imbalance"], 2);
}

TEST(Cli, SeedEchoedAndDefaultZero) {
    const auto j = run_json({"search-net", "--shape", "Cube"});
    EXPECT_EQ(j["config"]["seed"], 0);
    const auto k = run_json({"search-net", "--shape", "Cube", "--seed", "42"});
    EXPECT_EQ(k["config"]["seed"], 42);
}

TEST(Cli, EnvironmentOverrides) {
    ::setenv("POLYCUBE_BUDGET", "90s", 1);
    ::setenv("POLYCUBE_THREADS", "3", 1);
    const auto j = run_json({"ham-path", "--shape", "Cube"});
    EXPECT_EQ(j["config"]["budget_ms"], 90000);
    EXPECT_EQ(j["config"]["threads"], 3);
    const auto k = run_json({"ham-path", "--shape", "Cube", "--threads", "1", "--budget", "5s"});
    EXPECT_EQ(k["config"]["budget_ms"], 5000);
    EXPECT_EQ(k["config"]["threads"], 1);
    ::unsetenv("POLYCUBE_BUDGET");
    ::unsetenv("POLYCUBE_THREADS");
}

TEST(Cli, ReproducibleSearchNet) {
    const auto a = run_json({"search-net", "--shape", "P14", "--seed", "3"});
    const auto b = run_json({"search-net", "--shape", "P14", "--seed", "3", "--threads", "2"});
    EXPECT_EQ(a["exit_code"], 0);
    EXPECT_EQ(a["result"], b["result"]);
    EXPECT_EQ(a["input"], b["input"]);
}

TEST(Cli, ArtifactsWritten) {
    const auto svg = scratch("p6.svg");
    const auto fold = scratch("p6.fold");
    fs::remove(svg);
    fs::remove(fold);
    const auto j = run_json({"zipper-net", "--shape", "P6", "--svg", svg.string(), "--fold", fold.string()});
    EXPECT_EQ(j["exit_code"], 0);
    EXPECT_EQ(j["artifacts"].size(), 2u);
    EXPECT_TRUE(fs::exists(svg));
    std::ifstream in(fold);
    const auto f = json::parse(in);
    EXPECT_TRUE(f.contains("edges_assignment"));
}

TEST(Cli, CutRoundTrip) {
    const auto cut = scratch("p14.cut.json");
    const auto j = run_json({"search-net", "--shape", "P14", "--save-cut", cut.string()});
    ASSERT_EQ(j["exit_code"], 0);
    const auto k = run_json({"unfold", "--shape", "P14", "--cut", cut.string()});
    EXPECT_EQ(k["exit_code"], 0);
    EXPECT_EQ(k["result"]["nonoverlapping"], true);
}

TEST(Cli, ReproduceClaims) {
    for (const char* claim : {"lemma4", "lemma5", "theorem1", "theorem2", "p6-zipper-net"}) {
        const auto j = run_json({"reproduce", claim});
        EXPECT_EQ(j["exit_code"], 0) << claim << j.dump(2);
        EXPECT_EQ(j["result"]["holds"], true) << claim;
    }
    const auto tower = run_json({"reproduce", "tower", "--k", "3"});
    EXPECT_EQ(tower["result"]["holds"], true);
}
