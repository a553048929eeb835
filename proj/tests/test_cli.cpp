#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = std::string("cd ") + MGX_ASSET_DIR + " && " + env + " " + MGX_CLI + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST_CASE("oracle subcommands")
{
    CHECK(run("oracle order --group psl2_27.grp").out == "9828\n");
    CHECK(run("oracle involutions --group l3_3.grp").out == "117\n");
    CHECK(run("oracle order --group l3_3.grp --subgroup a").out == "3\n");
    const Run o = run("oracle orbits --group l3_3.grp");
    CHECK(o.status == 0);
    CHECK(o.out == "117 involutions, 1 orbits: 117\n");
}

TEST_CASE("corpus check and costs")
{
    const Run c = run("corpus check paper_words.corpus");
    CHECK(c.status == 0);
    CHECK(c.out.rfind("0 errors\n", 0) == 0);
    CHECK(c.out.find("\nj'' 28 ") != std::string::npos);
    const Run k = run("costs --corpus paper_words.corpus --format json");
    const auto j = nlohmann::json::parse(k.out);
    CHECK(j["t_count_u"] == 28);
    CHECK(j["mean_t_count_x"] == 4.0);
    CHECK(j["mean_applications_per_test"] == 96.0);
}

TEST_CASE("eval and order")
{
    CHECK(run("order paper_words.corpus u --group psl2_27.grp").out == "3\n");
    CHECK(run("order paper_words.corpus \"t^-1 u t\" --group psl2_27.grp").out == "3\n");
    CHECK(run("order paper_words.corpus t --group psl2_27.grp").out == "13\n");
    CHECK(run("order paper_words.corpus a --group psl2_27.grp --bind a=s").out == "2\n");
    CHECK(run("eval paper_words.corpus \"u u^-1\" --group psl2_27.grp").out == "()\n");
    CHECK(run("eval paper_words.corpus nosuch --group psl2_27.grp").status == 2);
    CHECK(run("eval paper_words.corpus u --group psl2_27.grp --bind a=zz").status == 2);
}

TEST_CASE("pipeline")
{
    const Run l3 = run("pipeline psl227 --group l3_3.grp --seed 0");
    CHECK(l3.status == 0);
    CHECK(l3.out.find("verdict not_found (no valid 3^3)") != std::string::npos);

    const std::string cmd = "pipeline psl227 --group psl2_27.grp --seed 0 --format json --corpus paper_words.corpus";
    const Run a = run(cmd);
    const Run b = run(cmd, "MGX_THREADS=3");
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["verdict"] == "found");
    CHECK(j["inverting_involutions"] == 13);
    CHECK(j["cases"][0]["verified_order"] == 9828);
    CHECK(j["seed"] == 0);
    for (const char* key : {"group", "verdict", "torus_order", "inverting_involutions", "d26_count", "orbit_sizes", "cases",
                            "costs", "seed"})
        CHECK(j.contains(key));
}

TEST_CASE("exit codes")
{
    CHECK(run("").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("oracle order --group missing.grp").status == 2);
    CHECK(run("pipeline psl227 --group psl2_27.grp --format xml").status == 2);
    CHECK(run("pipeline psl227 --group psl2_27.grp --torus u").status == 2);
    CHECK(run("pipeline psl227 --group l3_3.grp --budget 1 --seed 0").status == 3);
    CHECK(run("--help").status == 0);
}
