#include "wallcross/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out, err;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream o, e;
    Result r;
    r.code = wallcross::run(args, o, e);
    r.out = o.str();
    r.err = e.str();
    return r;
}

std::string example(const std::string& name) { return std::string(WALLCROSS_DATA) + "/inputs/" + name; }

std::string temp_file(const std::string& name, const std::string& text)
{
    auto p = std::filesystem::temp_directory_path() / ("wallcross_test_" + name);
    std::ofstream(p) << text;
    return p.string();
}

} // namespace

TEST_CASE("validate prints a JSON report")
{
    auto r = call({"validate", example("f1_p2_wall.json")});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["pass"] == true);
    CHECK(j["command"] == "validate");
}

TEST_CASE("classify-wall reports the type and crepancy")
{
    auto r = call({"classify-wall", example("f1_p2_wall.json")});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j.dump().find("II_remove_ray") != std::string::npos);
}

TEST_CASE("malformed JSON exits with 2")
{
    auto f = temp_file("bad.json", "{\"rank\": 1, \"chars\": [[1], ");
    auto r = call({"hseries", f});
    CHECK(r.code == 2);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("invalid GIT data fails validation with 2")
{
    auto f = temp_file("degenerate.json", R"({"git": {"rank": 2, "chars": [[1, 0], [2, 0]]}})");
    CHECK(call({"validate", f}).code == 2);
}

TEST_CASE("unknown subcommand and bad flags are usage errors")
{
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"periods", "--spec", "nonsense"}).code == 2);
    CHECK(call({}).code == 2);
}

TEST_CASE("mode must match the command")
{
    CHECK(call({"periods", "--spec", "q4_k3", "--mode", "numeric"}).code == 2);
    CHECK(call({"periods", "--spec", "q4_k3", "--mode", "exact"}).code == 0);
}

TEST_CASE("periods report")
{
    auto r = call({"periods", "--spec", "q4_k3", "--bound", "3"});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j.dump().find("369600") != std::string::npos);
}

TEST_CASE("zero tolerance fails the connection check with exit 1")
{
    auto r = call({"connection-check", example("cubic_surface_connection.json"), "--tol", "0"});
    CHECK(r.code == 1);
}

TEST_CASE("output flag writes the report to a file")
{
    auto p = (std::filesystem::temp_directory_path() / "wallcross_test_out.json").string();
    auto r = call({"periods", "--spec", "relations", "--bound", "4", "--output", p});
    CHECK(r.code == 0);
    std::ifstream f(p);
    auto j = json::parse(f);
    CHECK(j["pass"] == true);
    CHECK(r.out.find("periods:") == 0);
}

TEST_CASE("reports are deterministic")
{
    auto a = call({"mb-eval", example("cubic_surface_small_q.json")});
    auto b = call({"mb-eval", example("cubic_surface_small_q.json")});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}
