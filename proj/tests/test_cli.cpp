// End-to-end checks of the command line front end through a subprocess:
// exit codes, deterministic default reports, JSON emission, and the
// canonical/integrate round trips through files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

std::string g_dir; // per-process scratch directory

std::string scratch() {
    if (g_dir.empty()) {
        char tmpl[] = "/tmp/hsdcliXXXXXX";
        char* got = mkdtemp(tmpl);
        REQUIRE(got != nullptr);
        g_dir = got;
    }
    return g_dir;
}

// run the CLI, capture stdout to a file, return the exit code
int run(const std::string& args, const std::string& out_file) {
    std::string cmd = std::string(HSD_CLI_PATH) + " " + args + " > " + out_file +
                      " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

} // namespace

TEST_CASE("exit codes") {
    std::string dir = scratch();
    CHECK(run("verify --suite nosuch", dir + "/e1") == 64);
    CHECK(run("verify --suite pthpower --p 2", dir + "/e2") == 0);
    CHECK(run("canonical --law multiplicative", dir + "/e3") == 64);
    CHECK(run("--help", dir + "/e4") == 0);
    CHECK(run("frobnicate", dir + "/e5") == 64);
}

TEST_CASE("default reports are byte identical across runs") {
    std::string dir = scratch();
    const std::string args = "verify --suite approx --p 2 --samples 50 --seed 7";
    CHECK(run(args, dir + "/r1") == 0);
    CHECK(run(args, dir + "/r2") == 0);
    std::string a = slurp(dir + "/r1");
    CHECK(a == slurp(dir + "/r2"));
    CHECK(!a.empty());
}

TEST_CASE("verify emits parseable JSON") {
    std::string dir = scratch();
    CHECK(run("verify --suite laws --p 2 --order 8 --json", dir + "/v") == 0);
    auto j = nlohmann::json::parse(slurp(dir + "/v"));
    CHECK(j.at("pass").get<bool>());
    REQUIRE(!j.at("cases").empty());
    for (const auto& c : j["cases"]) {
        CHECK(c.at("suite") == "laws");
        CHECK(c.at("pass").get<bool>());
        CHECK(c.contains("params"));
    }
}

TEST_CASE("series tables") {
    std::string dir = scratch();
    CHECK(run("series --p 3 --target verschiebung --law multiplicative",
              dir + "/s1") == 0);
    CHECK(slurp(dir + "/s1").find("V = X") != std::string::npos);

    CHECK(run("series --p 2 --target canonical --law additive --order 4 --json",
              dir + "/s2") == 0);
    auto j = nlohmann::json::parse(slurp(dir + "/s2"));
    CHECK(j.at("p") == 2);
    CHECK(j.at("gen_image")[1] == "1");
}

TEST_CASE("canonical element extraction from a file") {
    std::string dir = scratch();
    spit(dir + "/gm.json",
         R"({"p":2,"m":2,"gen_image":["t","t+1","0","0"]})");
    CHECK(run("canonical --input " + dir + "/gm.json --law multiplicative",
              dir + "/c1") == 0);
    std::string out = slurp(dir + "/c1");
    CHECK(out.find("x = t") != std::string::npos);
    CHECK(out.find("level m = 2") != std::string::npos);

    // first component zero: no multiplicative canonical element exists
    spit(dir + "/deg.json",
         R"({"p":2,"m":2,"gen_image":["t","0","t+1","0"]})");
    CHECK(run("canonical --input " + dir + "/deg.json --law multiplicative",
              dir + "/c2") == 1);
}

TEST_CASE("integration round trip through files") {
    std::string dir = scratch();
    spit(dir + "/in.json", R"({"p":2,"m":1,"gen_image":["t","1"]})");
    CHECK(run("integrate --law additive --input " + dir +
                  "/in.json --order 8 --output " + dir + "/out.json",
              dir + "/i1") == 0);
    auto j = nlohmann::json::parse(slurp(dir + "/out.json"));
    CHECK(j.at("audit").at("pass").get<bool>());
    CHECK(j.at("iterativity").at("pass").get<bool>());
    CHECK(j.at("canonical_x").at("x") == "t");
    CHECK(j.at("output").at("precision") == 8);
    CHECK(j.at("output").at("gen_image")[1] == "1");
    CHECK(j.at("output").at("gen_image")[2] == "0");

    // a formal input file is truncated at the requested level first
    spit(dir + "/formal.json",
         R"({"p":2,"precision":4,"gen_image":["t","1","0","0"]})");
    CHECK(run("integrate --law additive --input " + dir +
                  "/formal.json --m 1 --order 8 --output " + dir + "/out2.json",
              dir + "/i2") == 0);
    auto j2 = nlohmann::json::parse(slurp(dir + "/out2.json"));
    CHECK(j2.at("output").at("gen_image") == j.at("output").at("gen_image"));

    // the override changes the expansion but still audits cleanly
    CHECK(run("integrate --law additive --input " + dir +
                  "/in.json --order 8 --x t^2+t --output " + dir + "/out3.json",
              dir + "/i3") == 0);
    auto j3 = nlohmann::json::parse(slurp(dir + "/out3.json"));
    CHECK(j3.at("audit").at("pass").get<bool>());
    CHECK(j3.at("output").at("gen_image")[2] == "1");
}

TEST_CASE("malformed input files fail cleanly") {
    std::string dir = scratch();
    spit(dir + "/bad.json", "{ not json");
    CHECK(run("canonical --input " + dir + "/bad.json --law additive",
              dir + "/m1") == 1);
    spit(dir + "/both.json",
         R"({"p":2,"m":1,"precision":4,"gen_image":["t","1"]})");
    CHECK(run("integrate --law additive --input " + dir + "/both.json --order 8",
              dir + "/m2") == 1);
    CHECK(run("canonical --input " + dir + "/nonexistent.json --law additive",
              dir + "/m3") == 1);
}
