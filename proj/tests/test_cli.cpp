#include "doctest.h"

#include "relcheck/cli.hpp"
#include "relcheck/formats.hpp"
#include "relcheck/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace relcheck;

namespace {

std::string data(const std::string& name)
{
    return std::string(RELCHECK_DATA_DIR) + "/" + name;
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("relcheck-test-" + name)).string();
}

}  // namespace

TEST_CASE("audit of Rel(finset(2)) passes")
{
    auto r = run({"audit", "--category", "finset(2)", "--fs", "epimono", "--exhaustive"});
    CHECK(r.code == exit_pass);
    CHECK(r.out.find("result: pass") != std::string::npos);
}

TEST_CASE("unknown flags and bad input are input errors")
{
    CHECK(run({"audit", "--frobnicate"}).code == exit_input);
    CHECK(run({}).code == exit_input);
    CHECK(run({"audit"}).code == exit_input);
    CHECK(run({"audit", "--category", "finset(2)", "--format", "xml"}).code == exit_input);
    CHECK(run({"audit", "--double", data("no-such-file.dblcat")}).code == exit_input);
    auto r = run({"audit", "--category", data("chain3.fcat"), "--fs", "epimono"});
    CHECK(r.code == exit_input);
    CHECK(r.err.find("epimono") != std::string::npos);
    CHECK(run({"audit", "--category", "finset(2)", "--double", data("trivial.dblcat")}).code == exit_input);
}

TEST_CASE("a malformed file reports its line")
{
    const std::string path = temp_path("bad.fcat");
    write_file(path, "object a\nmorphism 1a : a -> a\nidentity a = 1a\ncompose 1a 1a 1a\n");
    auto r = run({"compose", "--category", path, "1a", "1a"});
    CHECK(r.code == exit_input);
    CHECK(r.err.find(path + ":4:") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("failing audits exit 1 with a witness")
{
    auto r = run({"audit", "--double", data("deleted-companion.dblcat"), "--format", "dblrep"});
    CHECK(r.code == exit_fail);
    CHECK(r.out.find("witness w1 condition=equipment") != std::string::npos);
    auto doc = parse_dblrep(r.out);
    CHECK_FALSE(doc.ok());
}

TEST_CASE("report replays witnesses against the input")
{
    const std::string path = temp_path("dc.dblrep");
    auto r = run({"audit", "--double", data("deleted-companion.dblcat"), "--format", "dblrep", "--out", path});
    CHECK(r.code == exit_fail);
    CHECK(r.out.empty());
    auto rep = run({"report", path, "--double", data("deleted-companion.dblcat"), "--format", "dblrep"});
    CHECK(rep.code == exit_fail);
    CHECK(rep.err.find("replay w1 equipment: reproduced") != std::string::npos);
    CHECK(rep.out == read_file(path));
    // The same witness does not reproduce on a double category where it passes.
    auto other = run({"report", path, "--double", data("rel2-table.dblcat")});
    CHECK(other.code == exit_input);
    std::remove(path.c_str());
}

TEST_CASE("compose and factorize")
{
    auto r = run({"compose", "--category", data("chain3.fcat"), "ab", "bc"});
    CHECK(r.code == exit_pass);
    CHECK(r.out == "ac\n");
    CHECK(run({"compose", "--category", data("chain3.fcat"), "bc", "ab"}).code == exit_input);
    CHECK(run({"compose", "--category", "finset(2)", "[1]:1->2", "[2,1]:2->2"}).out == "[2]:1->2\n");
    auto p = run({"compose", "--double", data("rel2-table.dblcat"), "{(1,1),(1,2)}:1-|->2", "{(2,2)}:2-|->2"});
    CHECK(p.code == exit_pass);
    CHECK(p.out == "{(1,2)}:1-|->2\n");

    auto f = run({"factorize", "--category", "finset(2)", "--fs", "epimono", "[1,1]:2->2"});
    CHECK(f.out == "[1,1]:2->2 = [1,1]:2->1 ; [1]:1->2\n");
    CHECK(run({"factorize", "--category", "finset(3)"}).code == exit_pass);
    auto bad = run({"factorize", "--category", "finset(2)", "--fs", data("finset2-all-iso.fs"), "--format", "dblrep"});
    CHECK(bad.code == exit_fail);
    CHECK(bad.out.find("condition=properness verdict=fail") != std::string::npos);
    CHECK(run({"factorize", "--category", data("chain3.fcat"), "--fs", data("chain3-iso-all.fs")}).code == exit_pass);
}

TEST_CASE("build-rel output parses back and audits")
{
    auto r = run({"build-rel", "--category", data("chain3.fcat"), "--fs", data("chain3-iso-all.fs")});
    REQUIRE(r.code == exit_pass);
    auto t = parse_dblcat(r.out);
    CHECK(emit_dblcat(*t) == r.out);
    const std::string path = temp_path("chain3.dblcat");
    write_file(path, r.out);
    CHECK(run({"audit", "--double", path, "--exhaustive"}).code == exit_pass);
    std::remove(path.c_str());
}

TEST_CASE("derive-fs writes a checkable system")
{
    const std::string path = temp_path("derived.fs");
    auto r = run({"derive-fs", "--category", "finset(2)", "--out", path});
    CHECK(r.code == exit_pass);
    auto c = load_category("finset(2)");
    auto fs = load_fs(path, *c, "finset(2)");
    CHECK(check_factorization_system(*fs).ok());
    for (const Arrow& f : all_arrows(*c)) {
        CHECK(fs->in_left(f) == is_surjective(f));
        CHECK(fs->in_right(f) == is_injective(f));
    }
    std::remove(path.c_str());
}

TEST_CASE("equivalence on the table copy and on a control")
{
    auto ok = run({"equivalence", "--double", data("rel2-table.dblcat"), "--format", "dblrep"});
    CHECK(ok.code == exit_pass);
    auto doc = parse_dblrep(ok.out);
    REQUIRE(doc.find("equivalence"));
    CHECK(doc.find("equivalence")->report.ok());
    auto bad = run({"equivalence", "--double", data("deleted-companion.dblcat"), "--format", "dblrep"});
    CHECK(bad.code == exit_fail);
    CHECK(bad.out.find("  explained-by equipment\n") != std::string::npos);
}

TEST_CASE("budget from the environment")
{
    setenv("RELCHECK_BUDGET", "1", 1);
    auto r = run({"audit", "--category", "finset(2)", "--format", "text"});
    CHECK(r.code == exit_pass);
    CHECK(r.out.find("tabulators                pass            5 checked") != std::string::npos);
    // The flag wins over the environment.
    auto r2 = run({"audit", "--category", "finset(2)", "--max-size", "2"});
    CHECK(r2.out.find("tabulators                pass            31 checked") != std::string::npos);
    setenv("RELCHECK_BUDGET", "many", 1);
    CHECK(run({"audit", "--category", "finset(2)"}).code == exit_input);
    unsetenv("RELCHECK_BUDGET");
}
