#include "doctest.h"

#include "relcheck/double_ops.hpp"
#include "relcheck/limits.hpp"
#include "relcheck/rel_double.hpp"

#include "generators.hpp"

using namespace relcheck;

namespace {

Arrow fn(const char* text)
{
    auto f = parse_function(text);
    REQUIRE(f);
    return *f;
}

Pro rel(const RelDouble& d, const char* text)
{
    auto p = d.parse_pro(text);
    REQUIRE_MESSAGE(p, text);
    return *p;
}

// Composite by explicit pair search, independent of the library.
BoolMatrix oracle_compose(const BoolMatrix& r, const BoolMatrix& s)
{
    BoolMatrix out{r.rows, s.cols, 0};
    for (int a = 0; a < r.rows; ++a)
        for (int c = 0; c < s.cols; ++c) {
            bool hit = false;
            for (int b = 0; b < r.cols; ++b)
                hit = hit || (((r.bits >> (a * r.cols + b)) & 1U) && ((s.bits >> (b * s.cols + c)) & 1U));
            if (hit)
                out.bits |= 1ULL << (a * s.cols + c);
        }
    return out;
}

}  // namespace

TEST_CASE("relation counts")
{
    auto d = rel_finset(2);
    CHECK(d->proarrows(2, 2).size() == 16);
    CHECK(d->proarrows(0, 2).size() == 1);
    auto z = rel_finset(0);
    CHECK(z->all_proarrows().size() == 1);
    const Pro e = z->proarrows(0, 0).front();
    CHECK(z->cells(z->d0().identity(0), z->d0().identity(0), e, e).size() == 1);
}

TEST_CASE("matrix composition examples")
{
    auto r = *parse_matrix("{(1,1),(1,2)}", 2, 2);
    auto s = *parse_matrix("{(2,2)}", 2, 2);
    CHECK(matrix_compose(r, s).str() == "{(1,2)}");
    CHECK(matrix_compose(r, BoolMatrix::diagonal(2)) == r);
    CHECK(matrix_compose(r, BoolMatrix::empty(2, 3)) == BoolMatrix::empty(2, 3));
    CHECK(matrix_meet(r, *parse_matrix("{(1,2),(2,2)}", 2, 2)).str() == "{(1,2)}");
    CHECK(matrix_meet(r, r) == r);
    CHECK(matrix_meet(r, BoolMatrix::full(2, 2)) == r);
}

TEST_CASE("matrix composition laws")
{
    testing::Gen gen(7);
    for (int trial = 0; trial < 400; ++trial) {
        const int a = gen.size(0, 3), b = gen.size(0, 3), c = gen.size(0, 3), e = gen.size(0, 3);
        const auto r = gen.relation(a, b), s = gen.relation(b, c), t = gen.relation(c, e);
        const auto r2 = gen.relation(a, b);
        CHECK(matrix_compose(r, s) == oracle_compose(r, s));
        CHECK(matrix_compose(matrix_compose(r, s), t) == matrix_compose(r, matrix_compose(s, t)));
        CHECK(matrix_compose(BoolMatrix::diagonal(a), r) == r);
        CHECK(matrix_meet(r, r2) == matrix_meet(r2, r));
        CHECK(matrix_leq(matrix_compose(matrix_meet(r, r2), s),
                         matrix_meet(matrix_compose(r, s), matrix_compose(r2, s))));
    }
}

TEST_CASE("generic composite equals the matrix product")
{
    auto d = rel_finset(2);
    CHECK(d->pro_name(*d->hcomp(rel(*d, "{(1,1),(1,2)}:2-|->2"), rel(*d, "{(2,2)}:2-|->2"))) ==
          "{(1,2)}:2-|->2");
    testing::Gen gen(3);
    auto d3 = rel_finset(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int a = gen.size(0, 3), b = gen.size(0, 3), c = gen.size(0, 3);
        const auto r = gen.relation(a, b), s = gen.relation(b, c);
        auto got = d3->hcomp(MatrixCodec::pro(r), MatrixCodec::pro(s));
        REQUIRE(got);
        CHECK(MatrixCodec::matrix(*got) == oracle_compose(r, s));
    }
}

TEST_CASE("units, companions and conjoints")
{
    auto d = rel_finset(2);
    CHECK(d->pro_name(*d->unit(2)) == "{(1,1),(2,2)}:2-|->2");
    CHECK(d->pro_name(*d->unit(0)) == "{}:0-|->0");
    CHECK(d->pro_name(*d->unit(1)) == "{(1,1)}:1-|->1");
    const Arrow f = fn("[1,1]:2->1");
    auto comp = find_companion(*d, f);
    auto conj = find_conjoint(*d, f);
    REQUIRE(comp);
    REQUIRE(conj);
    CHECK(d->pro_name(comp->pro) == "{(1,1),(2,1)}:2-|->1");
    CHECK(d->pro_name(conj->pro) == "{(1,1),(1,2)}:1-|->2");
    CHECK(find_companion(*d, d->d0().identity(2))->pro == *d->unit(2));
    const Arrow swap = fn("[2,1]:2->2");
    auto cs = find_companion(*d, swap);
    REQUIRE(cs);
    CHECK(companion_equations(*d, swap, *cs));
    CHECK(d->vcomp(cs->unit, cs->counit) == *d->unit_cell(swap));
}

TEST_CASE("restriction and extension")
{
    auto d = rel_finset(2);
    const Arrow f = fn("[1,1]:2->1");
    const Arrow id1 = d->d0().identity(1);
    auto r = find_restriction(*d, f, *d->unit(1), id1);
    REQUIRE(r);
    CHECK(d->pro_name(r->pro) == "{(1,1),(2,1)}:2-|->1");
    auto k = find_restriction(*d, f, *d->unit(1), f);
    REQUIRE(k);
    CHECK(d->pro_name(k->pro) == "{(1,1),(1,2),(2,1),(2,2)}:2-|->2");
    const Pro m = rel(*d, "{(1,2)}:2-|->2");
    const Arrow id2 = d->d0().identity(2);
    auto same = find_restriction(*d, id2, m, id2);
    REQUIRE(same);
    CHECK(same->pro == m);
    CHECK(is_identity_cell(*d, same->cell));
    auto e = find_extension(*d, f, *d->unit(2), f);
    REQUIRE(e);
    CHECK(e->pro == *d->unit(1));
    auto e2 = find_extension(*d, id2, m, id2);
    REQUIRE(e2);
    CHECK(e2->pro == m);
}

TEST_CASE("kernels and cokernels")
{
    auto d = rel_finset(3);
    auto k = kernel(*d, fn("[1,1,2]:3->2"));
    auto c = cokernel(*d, fn("[1,1,2]:3->2"));
    REQUIRE(k);
    REQUIRE(c);
    CHECK(d->pro_name(*k) == "{(1,1),(1,2),(2,1),(2,2),(3,3)}:3-|->3");
    CHECK(*c == *d->unit(2));
    CHECK(*kernel(*d, fn("[1]:1->2")) == *d->unit(1));
    CHECK(d->pro_name(*cokernel(*d, fn("[1]:1->2"))) == "{(1,1)}:2-|->2");
    CHECK(*kernel(*d, fn("[2,1]:2->2")) == *d->unit(2));
}

TEST_CASE("tabulators are apexes")
{
    auto d = rel_finset(2);
    const Pro m = rel(*d, "{(1,2),(2,1)}:2-|->2");
    auto t = find_tabulator(*d, m);
    REQUIRE(t);
    CHECK(t->apex == 2);
    CHECK(t->l == fn("[1,2]:2->2"));
    CHECK(t->r == fn("[2,1]:2->2"));
    auto ty = find_tabulator(*d, *d->unit(2));
    REQUIRE(ty);
    CHECK(ty->apex == 2);
    CHECK(d->d0().is_identity(ty->l));
    auto te = find_tabulator(*d, rel(*d, "{}:2-|->2"));
    REQUIRE(te);
    CHECK(te->apex == 0);
    for (const Pro& p : d->all_proarrows()) {
        auto tp = find_tabulator(*d, p);
        REQUIRE(tp);
        CHECK(tabulator_universal(*d, p, *tp));
        CHECK(tp->apex == MatrixCodec::matrix(p).count());
    }
}

TEST_CASE("local and cartesian products")
{
    auto d = rel_finset(2);
    const Pro a = rel(*d, "{(1,1),(1,2)}:2-|->2");
    const Pro b = rel(*d, "{(1,2),(2,2)}:2-|->2");
    auto q = find_local_product(*d, a, b);
    REQUIRE(q);
    CHECK(d->pro_name(q->pro) == "{(1,2)}:2-|->2");
    auto u = find_cartesian_product(*d, *d->unit(1), *d->unit(1));
    REQUIRE(u);
    CHECK(u->pro == *d->unit(1));
    auto s = find_cartesian_product(*d, rel(*d, "{(1,1)}:1-|->1"), rel(*d, "{(1,2)}:1-|->2"));
    REQUIRE(s);
    CHECK(d->pro_name(s->pro) == "{(1,2)}:1-|->2");
    const Pro m = rel(*d, "{(1,2),(2,1)}:2-|->2");
    const Pro empty = rel(*d, "{}:0-|->0");
    auto z = find_cartesian_product(*d, m, empty);
    REQUIRE(z);
    CHECK(z->pro == rel(*d, "{}:0-|->0"));
}

TEST_CASE("poset relations")
{
    auto c = std::make_shared<FiniteCategory>(chain_poset(3));
    auto fs = std::make_shared<TableFS>(iso_all(*c));
    auto d = build_rel_double(c, fs);
    // relations a -|-> b are the elements below both
    CHECK(d->proarrows(0, 1).size() == 1);
    CHECK(d->proarrows(1, 2).size() == 2);
    CHECK(d->proarrows(2, 2).size() == 3);
    const Pro ab = d->proarrows(1, 2)[1];
    const Pro bc = d->proarrows(2, 2)[1];
    auto comp = d->hcomp(ab, bc);
    REQUIRE(comp);
    CHECK(d->span(*comp).apex == 1);
    auto t = find_tabulator(*d, ab);
    REQUIRE(t);
    CHECK(t->apex == 1);
}

TEST_CASE("invalid factorization systems are rejected")
{
    auto c = std::make_shared<FinSetCategory>(2);
    auto fs = std::make_shared<TableFS>(all_iso(*c));
    CHECK_THROWS_AS(build_rel_double(c, fs), InvalidFactorizationSystem);
}
