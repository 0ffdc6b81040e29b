#include "doctest.h"

#include "relcheck/finset.hpp"
#include "relcheck/formats.hpp"

#include "generators.hpp"

#include <functional>

using namespace relcheck;

namespace {

std::string data(const std::string& name)
{
    return std::string(RELCHECK_DATA_DIR) + "/" + name;
}

int error_line(const std::function<void()>& f)
{
    try {
        f();
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("finset literal")
{
    CHECK(parse_finset_literal("finset(2)") == 2);
    CHECK(parse_finset_literal("finset(0)") == 0);
    CHECK_FALSE(parse_finset_literal("finset()"));
    CHECK_FALSE(parse_finset_literal("finset(2"));
    CHECK_FALSE(parse_finset_literal("finset(-1)"));
    CHECK_FALSE(parse_finset_literal("finset(2x)"));
    auto c = load_category("finset(2)");
    CHECK(c->objects().size() == 3);
    CHECK(c->hom_count(2, 2) == 4);
    CHECK(c->hom_count(0, 2) == 1);
    CHECK(c->hom_count(2, 0) == 0);
    CHECK_THROWS_AS(load_category("finset(99)"), ParseError);
}

TEST_CASE("the three-chain file")
{
    auto c = load_category(data("chain3.fcat"));
    CHECK(c->objects().size() == 3);
    CHECK(all_arrows(*c).size() == 6);
    auto ab = c->parse_arrow("ab");
    auto bc = c->parse_arrow("bc");
    REQUIRE(ab);
    REQUIRE(bc);
    CHECK(c->arrow_name(c->compose(*bc, *ab)) == "ac");
}

TEST_CASE("fcat round trip")
{
    auto c = std::make_shared<FiniteCategory>(chain_poset(4));
    const std::string text = emit_fcat(*c);
    auto back = parse_fcat(text);
    CHECK(emit_fcat(*back) == text);
    CHECK(back->morphism_count() == 10);
    for (int g = 0; g < c->morphism_count(); ++g)
        for (int f = 0; f < c->morphism_count(); ++f)
            CHECK(back->composite_id(g, f) == c->composite_id(g, f));
}

TEST_CASE("fcat fills identity composites")
{
    auto c = parse_fcat("object a\nobject b\nmorphism 1a : a -> a\nmorphism 1b : b -> b\n"
                        "morphism f : a -> b\nidentity a = 1a\nidentity b = 1b\n");
    CHECK(c->composite_id(*c->find_morphism("1b"), *c->find_morphism("f")) == *c->find_morphism("f"));
    CHECK(c->composite_id(*c->find_morphism("f"), *c->find_morphism("1a")) == *c->find_morphism("f"));
}

TEST_CASE("fcat errors carry line numbers")
{
    const std::string head = "object a\nobject b\nmorphism 1a : a -> a\nmorphism 1b : b -> b\n"
                             "identity a = 1a\nidentity b = 1b\n";
    CHECK(error_line([&] { parse_fcat(head + "compose 1a 1a 1a\n"); }) == 7);
    CHECK(error_line([&] { parse_fcat(head + "# fine\ncompose 1a nope = 1a\n"); }) == 8);
    CHECK(error_line([&] { parse_fcat("object a\nobject a\n"); }) == 2);
    CHECK(error_line([&] { parse_fcat("object a\nmorphism f : a -> z\n"); }) == 2);
    CHECK(error_line([&] { parse_fcat("object a\nfrobnicate a\n"); }) == 2);
    // Composing across the wrong objects is reported where it is written.
    CHECK(error_line([&] { parse_fcat(head + "morphism f : a -> b\ncompose f 1b = f\n"); }) == 8);
    // Whole-file problems have line 0.
    CHECK(error_line([&] { parse_fcat("object a\n"); }) == 0);
    try {
        parse_fcat(head + "compose 1a\n", "x.fcat");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("x.fcat:7:", 0) == 0);
    }
}

TEST_CASE("fs files")
{
    auto c = load_category(data("chain3.fcat"));
    auto fs = load_fs(data("chain3-iso-all.fs"), *c, data("chain3.fcat"));
    CHECK(check_factorization_system(*fs).ok());
    CHECK(emit_fs(*fs) == read_file(data("chain3-iso-all.fs")));

    auto f3 = load_category("finset(3)");
    auto em = load_fs("epimono", *f3, "finset(3)");
    auto parsed = parse_fs(emit_fs(*em), *f3);
    for (const Arrow& f : all_arrows(*f3)) {
        CHECK(parsed->in_left(f) == is_surjective(f));
        CHECK(parsed->in_right(f) == is_injective(f));
        CHECK(parsed->factorize(f) == em->factorize(f));
    }
    CHECK_THROWS_AS(load_fs("epimono", *c, data("chain3.fcat")), ParseError);
}

TEST_CASE("fs errors")
{
    auto c = load_category(data("chain3.fcat"));
    CHECK(error_line([&] { parse_fs("left: 1a\nright: zz\n", *c); }) == 2);
    CHECK(error_line([&] { parse_fs("1a\n", *c); }) == 1);
    CHECK(error_line([&] { parse_fs("left: 1a 1b 1c\nright: ab bc\nfactor ac = ab ; bc\n", *c); }) == 3);
    CHECK(error_line([&] { parse_fs("left: 1a\nright: ab\nfactor ab = ab ; 1b\n", *c); }) == 3);
}

TEST_CASE("dblcat round trips on every generator")
{
    std::vector<std::unique_ptr<TableDouble>> ts;
    ts.push_back(trivial_double());
    ts.push_back(unit_pure_control());
    ts.push_back(deleted_companion_control());
    ts.push_back(span_control());
    ts.push_back(rel_finset_table(2));
    for (const auto& t : ts) {
        const std::string text = emit_dblcat(*t);
        auto back = parse_dblcat(text, t->name());
        CHECK_MESSAGE(emit_dblcat(*back) == text, t->name());
        CHECK(back->name() == t->name());
        CHECK(back->pro_entries().size() == t->pro_entries().size());
        CHECK(back->support() == t->support());
    }
}

TEST_CASE("shipped tables match their generators")
{
    CHECK(read_file(data("trivial.dblcat")) == emit_dblcat(*trivial_double()));
    CHECK(read_file(data("unit-pure.dblcat")) == emit_dblcat(*unit_pure_control()));
    CHECK(read_file(data("deleted-companion.dblcat")) == emit_dblcat(*deleted_companion_control()));
    CHECK(read_file(data("span2.dblcat")) == emit_dblcat(*span_control()));
    CHECK(read_file(data("rel2-table.dblcat")) == emit_dblcat(*rel_finset_table(2)));
    auto chain = std::make_shared<FiniteCategory>(chain_poset(3));
    CHECK(read_file(data("chain3.fcat")) == emit_fcat(*chain));
    FinSetCategory f2(2);
    CHECK(read_file(data("finset2-all-iso.fs")) == emit_fs(all_iso(f2)));
}

TEST_CASE("dblcat composites survive the round trip")
{
    auto t = span_control();
    auto back = parse_dblcat(emit_dblcat(*t));
    testing::Gen gen(5);
    for (int i = 0; i < 200; ++i) {
        int a = gen.size(0, 2), b = gen.size(0, 2), c = gen.size(0, 2);
        auto ps = t->proarrows(a, b);
        auto qs = t->proarrows(b, c);
        const Pro p = ps[static_cast<std::size_t>(gen.size(0, static_cast<int>(ps.size()) - 1))];
        const Pro q = qs[static_cast<std::size_t>(gen.size(0, static_cast<int>(qs.size()) - 1))];
        auto r1 = t->hcomp(p, q);
        auto r2 = back->hcomp(*back->parse_pro(t->pro_name(p)), *back->parse_pro(t->pro_name(q)));
        REQUIRE(r1.has_value() == r2.has_value());
        if (r1)
            CHECK(t->pro_name(*r1) == back->pro_name(*r2));
    }
}

TEST_CASE("dblcat errors")
{
    CHECK(error_line([] { parse_dblcat("mode thin\n"); }) == 0);
    CHECK(error_line([] { parse_dblcat("mode odd\nd0 finset(1)\n"); }) == 1);
    CHECK(error_line([] { parse_dblcat("mode thin\nd0 finset(1)\nproarrow p : 0 -|-> 7\n"); }) == 3);
    CHECK(error_line([] { parse_dblcat("mode thin\nd0 finset(1)\nproarrow p : 0 -> 1\n"); }) == 3);
    CHECK(error_line([] { parse_dblcat("mode thin\nd0 finset(1)\nproarrow p : 0 -|-> 1\nunit 0 = q\n"); }) == 4);
    CHECK(error_line([] { parse_dblcat("mode spans\nd0 finset(2)\nproarrow p : 0 -|-> 1\n"); }) == 3);
    CHECK(error_line([] {
              parse_dblcat("mode spans\nd0 finset(2)\nspan s : 1 <- 1 -> 1 via [1]:1->1 [1]:1->2\n");
          }) == 3);
    CHECK(error_line([] { parse_dblcat("mode thin\nobject a\nd0 inline\n"); }) == 2);
}
