#include "doctest.h"

#include "relcheck/double_ops.hpp"
#include "relcheck/table_double.hpp"

#include "generators.hpp"

#include <set>

using namespace relcheck;

namespace {

using Pairs = std::set<std::pair<int, int>>;

// "{(1,1),(2,1)}:2-|->1" read by hand into 0-based pairs.
Pairs pairs_of_name(const std::string& name)
{
    Pairs out;
    std::size_t i = 0;
    while ((i = name.find('(', i)) != std::string::npos) {
        const int a = name[i + 1] - '1';
        const int b = name[i + 3] - '1';
        out.insert({a, b});
        i += 4;
    }
    return out;
}

Pairs compose_pairs(const Pairs& r, const Pairs& s)
{
    Pairs out;
    for (auto [a, b] : r)
        for (auto [b2, c] : s)
            if (b == b2)
                out.insert({a, c});
    return out;
}

Pro pick(testing::Gen& gen, const std::vector<Pro>& v)
{
    return v[static_cast<std::size_t>(gen.size(0, static_cast<int>(v.size()) - 1))];
}

}  // namespace

TEST_CASE("the thin copy composes like relations")
{
    auto t = rel_finset_table(2);
    int pairs = 0;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c)
                for (const Pro& p : t->proarrows(a, b))
                    for (const Pro& q : t->proarrows(b, c)) {
                        auto r = t->hcomp(p, q);
                        REQUIRE(r);
                        CHECK(pairs_of_name(t->pro_name(*r)) ==
                              compose_pairs(pairs_of_name(t->pro_name(p)), pairs_of_name(t->pro_name(q))));
                        ++pairs;
                    }
    CHECK(pairs == 499);
}

TEST_CASE("thin cells are exactly the inclusions of relations along the arrows")
{
    auto t = rel_finset_table(2);
    const Category& c = t->d0();
    testing::Gen gen(21);
    for (int i = 0; i < 300; ++i) {
        int a = gen.size(0, 2), b = gen.size(0, 2), x = gen.size(0, 2), y = gen.size(0, 2);
        const Pro top = pick(gen, t->proarrows(a, b));
        const Pro bottom = pick(gen, t->proarrows(x, y));
        const auto ls = c.hom(a, x);
        const auto rs = c.hom(b, y);
        if (ls.empty() || rs.empty())
            continue;
        const Arrow l = ls[static_cast<std::size_t>(gen.size(0, static_cast<int>(ls.size()) - 1))];
        const Arrow r = rs[static_cast<std::size_t>(gen.size(0, static_cast<int>(rs.size()) - 1))];
        const Pairs tp = pairs_of_name(t->pro_name(top));
        const Pairs bp = pairs_of_name(t->pro_name(bottom));
        bool inside = true;
        for (auto [u, v] : tp)
            inside = inside && bp.count({apply(l, u), apply(r, v)});
        CHECK(t->cells(l, r, top, bottom).size() == (inside ? 1U : 0U));
    }
}

TEST_CASE("span composites are pullbacks")
{
    auto t = span_control();
    testing::Gen gen(8);
    for (int i = 0; i < 300; ++i) {
        int a = gen.size(0, 2), b = gen.size(0, 2), c = gen.size(0, 2);
        const Pro p = pick(gen, t->proarrows(a, b));
        const Pro q = pick(gen, t->proarrows(b, c));
        const Span sp = t->span(p);
        const Span sq = t->span(q);
        int apex = 0;
        std::multiset<std::pair<int, int>> legs;
        for (int u = 0; u < sp.apex; ++u)
            for (int v = 0; v < sq.apex; ++v)
                if (apply(sp.r, u) == apply(sq.l, v)) {
                    ++apex;
                    legs.insert({apply(sp.l, u), apply(sq.r, v)});
                }
        auto r = t->hcomp(p, q);
        if (apex > 4) {
            CHECK_FALSE(r);
            continue;
        }
        REQUIRE(r);
        const Span sr = t->span(*r);
        CHECK(sr.apex == apex);
        std::multiset<std::pair<int, int>> got;
        for (int w = 0; w < sr.apex; ++w)
            got.insert({apply(sr.l, w), apply(sr.r, w)});
        CHECK(got == legs);
    }
}

TEST_CASE("span cells are the mediating arrows")
{
    auto t = span_control();
    const Category& c = t->d0();
    testing::Gen gen(9);
    for (int i = 0; i < 200; ++i) {
        int a = gen.size(0, 2), b = gen.size(0, 2);
        const Pro p = pick(gen, t->proarrows(a, b));
        const Pro q = pick(gen, t->proarrows(a, b));
        const Span sp = t->span(p);
        const Span sq = t->span(q);
        std::size_t count = 0;
        for (const Arrow& m : c.hom(sp.apex, sq.apex))
            count += c.compose(sq.l, m) == sp.l && c.compose(sq.r, m) == sp.r;
        CHECK(t->cells(c.identity(a), c.identity(b), p, q).size() == count);
    }
}

TEST_CASE("explicit tables follow their tables")
{
    auto t = unit_pure_control();
    CHECK(t->validate(true).empty());
    const Arrow one = t->d0().identity(0);
    const Pro y = *t->unit(0);
    auto cs = t->cells(one, one, y, y);
    REQUIRE(cs.size() == 2);
    const Cell e = t->cell_name(cs[0]) == "e" ? cs[0] : cs[1];
    CHECK(t->vcomp(e, e) == e);
    CHECK(*t->hcomp(e, t->identity_cell(y)) == e);
    CHECK(t->identity_cell(y) != e);
}

TEST_CASE("validation catches broken tables")
{
    auto c = std::make_shared<FinSetCategory>(1);
    {
        TableDouble t(TableDouble::Mode::thin, c, "finset(1)");
        int p = t.add_proarrow("p", 1, 1);
        (void)p;
        CHECK(t.validate().find("identity cell") != std::string::npos);
    }
    {
        TableDouble t(TableDouble::Mode::explicit_cells, c, "finset(1)");
        int p = t.add_proarrow("p", 1, 1);
        int a = t.add_cell("a", c->identity(1), c->identity(1), p, p);
        int b = t.add_cell("b", c->identity(1), c->identity(1), p, p);
        t.set_identity_cell(p, a);
        t.set_vcomp(a, a, a);
        t.set_vcomp(a, b, b);
        t.set_vcomp(b, a, b);
        CHECK(t.validate().empty());
        CHECK(t.validate(true).find("missing") != std::string::npos);
        t.set_vcomp(b, b, a);
        CHECK(t.validate(true).empty());
    }
    {
        TableDouble t(TableDouble::Mode::spans, c, "finset(1)");
        t.add_span("s", Span{1, c->identity(1), c->identity(1)});
        t.add_span("s2", Span{1, c->identity(1), c->identity(1)});
        CHECK(t.validate().find("isomorphic") != std::string::npos);
    }
    CHECK_THROWS(TableDouble(TableDouble::Mode::spans, c, "finset(1)").add_proarrow("p", 0, 0));
}
