// Integration tests driving the installed CLI binary (path in BHSET_BIN).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string binary() {
    const char* bin = std::getenv("BHSET_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "BHSET_BIN must point at the CLI binary");
    return bin;
}

RunResult run(const std::string& args) {
    const std::string cmd = binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json run_json(const std::string& args, int expected_exit = 0) {
    RunResult r = run(args);
    CAPTURE(args);
    CAPTURE(r.out);
    REQUIRE(r.exit_code == expected_exit);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("xhn count and listing") {
    auto doc = run_json("xhn -h 2 -n 4");
    CHECK(doc["command"] == "xhn");
    CHECK(doc["result"]["count"] == 10);

    auto listed = run_json("xhn -h 2 -n 2 --list");
    CHECK(listed["result"]["list"] == json::parse("[[2,0],[1,1],[0,2]]"));

    CHECK(run("xhn -h 0 -n 2").exit_code == 2);
    CHECK(run("xhn -h 40 -n 40 --list").exit_code == 3);  // binom(79,40) above the cap
}

TEST_CASE("epsilon command") {
    auto doc = run_json("epsilon -h 2 sqrt:2 sqrt:3");
    const auto& eps = doc["result"]["eps"];
    CHECK(std::string(eps["lo"]["dec"]).substr(0, 6) == "0.3178");
    CHECK(eps["argmin"] == json::parse("[1,-1]"));
    CHECK(doc["result"]["q_min"] == 13);

    auto doc4 = run_json("epsilon -h 2 sqrt:2 sqrt:3 sqrt:5 sqrt:7");
    CHECK(std::string(doc4["result"]["eps"]["lo"]["dec"]).substr(0, 7) == "0.09184");
    CHECK(doc4["result"]["q_min"] == 44);

    CHECK(run("epsilon -h 2 --precision-max 256 rat:1 rat:2").exit_code == 4);
}

TEST_CASE("generate command") {
    auto doc = run_json("generate -h 2 -m 1 sqrt:2 sqrt:3");
    CHECK(doc["result"]["certificate"]["params"]["q"] == 13);
    CHECK(doc["result"]["certificate"]["set"] == json::parse("[[18],[22]]"));
    CHECK(doc["result"]["certificate"]["certified"] == true);

    auto all = run_json("generate -h 2 -m 1 -q 22 sqrt:2 sqrt:3 sqrt:5 --all");
    CHECK(all["result"]["set_count"] == 8);

    CHECK(run("generate -h 2 -m 1 -q 5 sqrt:2 sqrt:3").exit_code == 5);
    auto forced = run_json("generate -h 2 -m 1 -q 5 --force sqrt:2 sqrt:3");
    CHECK(forced["result"]["certificate"]["certified"] == false);
}

TEST_CASE("gadic command") {
    auto doc = run_json("gadic -g 10 -l 2 sqrt:2 sqrt:3 sqrt:5 sqrt:7");
    CHECK(doc["result"]["certificate"]["set"] == json::parse("[[141],[173],[223],[264]]"));
    CHECK(doc["result"]["certificate"]["certified"] == true);

    auto auto_doc = run_json("gadic -g 10 --auto-level sqrt:2 sqrt:3 sqrt:5 sqrt:7");
    CHECK(auto_doc["result"]["level"] == 2);
    CHECK(auto_doc["result"]["min_level"] == 2);

    CHECK(run("gadic -g 1 -l 2 sqrt:2").exit_code == 2);
}

TEST_CASE("verify command") {
    auto doc = run_json("verify -h 2 --points \"18 22\"");
    CHECK(doc["result"]["all_bh"] == true);
    CHECK(doc["result"]["reports"][0]["sumset_size"] == 3);

    auto bad = run_json("verify -h 2 --points \"0 1 2\"");
    CHECK(bad["result"]["all_bh"] == false);
    const auto& collision = bad["result"]["reports"][0]["collisions"][0];
    CHECK(collision["sum"] == json::parse("[2]"));
    CHECK(collision["multisets"].size() == 2);

    // d = 2 points, comma-separated coordinates.
    auto planar = run_json("verify -h 2 --points \"1,0 0,1\"");
    CHECK(planar["result"]["reports"][0]["is_bh"] == true);
}

TEST_CASE("generate piped into verify through a sets file") {
    const std::string path = "/tmp/bhset_cli_sets.json";
    auto gen = run_json("generate -h 2 -m 1 -q 44 sqrt:2 sqrt:3 sqrt:5 sqrt:7 --all --sets-out " + path);
    CHECK(gen["result"]["set_count"] == 16);

    auto ver = run_json("verify -h 2 --file " + path);
    CHECK(ver["result"]["all_bh"] == true);
    REQUIRE(ver["result"]["reports"].size() == 16);
    for (const auto& rep : ver["result"]["reports"]) {
        CHECK(rep["is_bh"] == true);
        CHECK(rep["sumset_size"] == 10);
    }
    std::remove(path.c_str());
}

TEST_CASE("verify reads plain text point files") {
    const std::string path = "/tmp/bhset_cli_points.txt";
    {
        std::ofstream out(path);
        out << "18\n22\n";
    }
    auto doc = run_json("verify -h 2 --file " + path);
    CHECK(doc["result"]["reports"][0]["is_bh"] == true);
    std::remove(path.c_str());
}

TEST_CASE("identical invocations produce identical payloads") {
    auto strip = [](json doc) {
        doc.erase("timing_ms");
        return doc.dump();
    };
    CHECK(strip(run_json("epsilon -h 2 sqrt:2 sqrt:3 sqrt:5")) ==
          strip(run_json("epsilon -h 2 sqrt:2 sqrt:3 sqrt:5")));
    CHECK(strip(run_json("generate -h 2 -m 1 -q 44 --all --seed 9 --limit 7 sqrt:2 sqrt:3 sqrt:5 sqrt:7")) ==
          strip(run_json("generate -h 2 -m 1 -q 44 --all --seed 9 --limit 7 sqrt:2 sqrt:3 sqrt:5 sqrt:7")));
}

TEST_CASE("text mode emits a human summary") {
    RunResult r = run("--text epsilon -h 2 sqrt:2 sqrt:3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("q_min") != std::string::npos);
}
