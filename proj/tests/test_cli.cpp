#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "coxtile/cli.hpp"
#include "coxtile/report.hpp"

using namespace coxtile;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "coxtile");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

Json first_result(const Outcome& o) { return parse_report(o.out).results.at(0); }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

const std::string kPentagon = COXTILE_DATA_DIR "/systems/pentagon.json";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 2") {
    CHECK(run_args({}).code == kExitInput);
    CHECK(run_args({"bogus"}).code == kExitInput);
    CHECK(run_args({"ball", "--radius", "-3"}).code == kExitInput);
    CHECK(run_args({"ball", "--system", "/nonexistent.json"}).code == kExitInput);
    CHECK(run_args({"walls", "--palette", "0,1"}).code == kExitInput);
    CHECK(run_args({"walls", "--palette", "0,x,0,1,0,1"}).code == kExitInput);
    CHECK(run_args({"seq", "--kind", "fibonacci"}).code == kExitInput);
    CHECK(run_args({"render", "--n", "2"}).code == kExitInput);
    CHECK(run_args({"ball", "--radius", "6", "--cap", "100"}).code == kExitInput);
    CHECK(run_args({"space", "--radius", "4", "--depth", "6"}).code == kExitVerification);
    const Outcome help = run_args({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("balance") != std::string::npos);
}

TEST_CASE("ball cap from the environment") {
    setenv("COXTILE_BALL_CAP", "20", 1);
    const Outcome o = run_args({"ball", "--radius", "3"});
    unsetenv("COXTILE_BALL_CAP");
    CHECK(o.code == kExitInput);
    CHECK(o.err.find("limit 20") != std::string::npos);
}

TEST_CASE("seq") {
    const Outcome o = run_args({"seq", "--kind", "ternary", "--n", "9"});
    REQUIRE(o.code == kExitOk);
    const Json j = first_result(o);
    CHECK(j["terms"] == Json::array({0, 2, 1, 0, 1, 2, 0, 2, 1}));
    CHECK(j["square_free"]["free"] == true);
    CHECK(first_result(run_args({"seq", "--kind", "morse_thue"}))["terms"].size() == 64);
}

TEST_CASE("ball and system names") {
    const Json a = first_result(run_args({"ball", "--system", kPentagon, "--radius", "3"}));
    const Json b = first_result(run_args({"ball", "--system", "pentagon", "--radius", "3"}));
    CHECK(a["ball"] == b["ball"]);
    CHECK(a["ball"]["size"] == 61);
    const Json w = first_result(run_args({"ball", "--system", "dihedral3", "--radius", "5", "--words"}));
    CHECK(w["ball"]["size"] == 6);
    CHECK(w["ball"]["normal_forms"][5] == "sts");
}

TEST_CASE("color") {
    const Outcome n = run_args({"color", "--system", "pentagon"});
    CHECK(n.code == kExitOk);
    CHECK(first_result(n)["report"]["unwitnessed"] == 0);
    const Outcome s = run_args({"color", "--kind", "squares", "--rho", "10"});
    CHECK(s.code == kExitOk);
    CHECK(first_result(s)["report"]["unwitnessed"] == 1);
    const Outcome m = run_args({"color", "--kind", "morse_thue", "--rho", "10"});
    CHECK(first_result(m)["report"]["unwitnessed"] == 0);
}

TEST_CASE("walls") {
    const Outcome o = run_args({"walls", "--system", "hexagon", "--palette", "alternating"});
    REQUIRE(o.code == kExitOk);
    const Json j = first_result(o);
    CHECK(j["walls"]["classes"].size() == 2);
    const Outcome bad = run_args({"walls", "--system", "hexagon", "--palette", "single"});
    CHECK(bad.code == kExitVerification);
    CHECK(first_result(bad)["palette_valid"] == false);
}

TEST_CASE("balance") {
    const Outcome o = run_args({"balance", "--system", kPentagon, "--orientation", "alternating", "--radius", "5"});
    REQUIRE(o.code == kExitOk);
    CHECK(first_result(o)["alphabet"]["verdict"] == "strictly_balanced");
    const Outcome p = run_args({"balance", "--system", "hexagon", "--palette", "alternating", "--orientation", "all_plus"});
    REQUIRE(p.code == kExitOk);
    CHECK(first_result(p)["alphabet"]["verdict"] == "unbalanced");
    CHECK(first_result(p)["witness_verified"] == true);
    const Outcome u = run_args({"balance", "--system", "hexagon", "--palette", "alternating", "--orientation", "unsigned"});
    CHECK(first_result(u)["alphabet"]["verdict"] == "semibalanced");
    const Outcome r = run_args({"balance", "--system", "hexagon", "--palette", "alternating", "--refine", "--radius", "6"});
    CHECK(r.code == kExitOk);
    CHECK(first_result(r)["refined"] == true);
}

TEST_CASE("render") {
    const Outcome one = run_args({"render", "--n", "3", "--radius", "0"});
    REQUIRE(one.code == kExitOk);
    std::size_t tiles = 0;
    for (std::size_t p = one.out.find("class=\"tile\""); p != std::string::npos; p = one.out.find("class=\"tile\"", p + 1))
        ++tiles;
    CHECK(tiles == 1);
    const auto dir = std::filesystem::temp_directory_path() / "coxtile_cli_test";
    std::filesystem::create_directories(dir);
    const auto svg = dir / "t.svg";
    const auto json = dir / "t.json";
    const Outcome o = run_args({"render", "--n", "3", "--radius", "2", "--svg", svg.string(), "--out", json.string()});
    REQUIRE(o.code == kExitOk);
    CHECK(o.out.empty());
    const Json j = parse_report(slurp(json)).results.at(0);
    CHECK(j["tiles"] == 31);
    CHECK(j["nonconvex_tiles"].empty());
    CHECK(slurp(svg).rfind("<?xml", 0) == 0);
    CHECK(run_args({"render", "--svg", "/nonexistent/dir/x.svg"}).code == kExitInput);
    std::filesystem::remove_all(dir);
}

TEST_CASE("space") {
    const Outcome o = run_args({"space", "--radius", "7", "--depth", "4", "--r1", "1"});
    REQUIRE(o.code == kExitOk);
    const Json j = first_result(o);
    for (const auto& r : j["translations"]) CHECK(r["verdict"] == "differs");
    for (const auto& r : j["constant_control"]) CHECK(r["verdict"] == "fixed");
}

TEST_CASE("reruns are byte-identical") {
    const std::vector<std::vector<std::string>> runs{
        {"seq", "--kind", "morse_thue", "--n", "100"},
        {"ball", "--system", "pentagon", "--radius", "4", "--words"},
        {"color", "--system", "pentagon", "--r1", "1", "--r2", "2", "--rho", "3"},
        {"walls", "--system", "hexagon", "--palette", "alternating"},
        {"balance", "--system", "hexagon", "--palette", "alternating", "--refine"},
        {"render", "--n", "3", "--radius", "2", "--seed", "5"},
        {"space", "--radius", "6", "--depth", "3", "--r1", "1"},
    };
    for (const auto& args : runs) {
        const Outcome a = run_args(args);
        const Outcome b = run_args(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

}
