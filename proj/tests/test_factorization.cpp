#include "doctest.h"

#include "relcheck/finset.hpp"
#include "relcheck/limits.hpp"

#include "generators.hpp"

using namespace relcheck;

namespace {

Arrow fn(const char* text)
{
    auto f = parse_function(text);
    REQUIRE(f);
    return *f;
}

}  // namespace

TEST_CASE("image factorization")
{
    auto a = finset_factorize(fn("[1,1,2]:3->2"));
    CHECK(a.e == fn("[1,1,2]:3->2"));
    CHECK(a.m == fn("[1,2]:2->2"));
    auto b = finset_factorize(fn("[2,2]:2->3"));
    CHECK(b.e == fn("[1,1]:2->1"));
    CHECK(b.m == fn("[2]:1->3"));
    FinSetCategory c(3);
    auto id = finset_factorize(c.identity(3));
    CHECK(id.e == c.identity(3));
    CHECK(id.m == c.identity(3));
    // first-preimage order, not numeric order
    auto d = finset_factorize(fn("[3,1,3]:3->3"));
    CHECK(d.e == fn("[1,2,1]:3->2"));
    CHECK(d.m == fn("[3,1]:2->3"));
}

TEST_CASE("chosen factorizations recompose")
{
    FinSetCategory c(4);
    EpiMonoFS fs(c);
    testing::Gen gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Arrow f = gen.function(gen.size(0, 4), gen.size(1, 4));
        auto ef = fs.factorize(f);
        REQUIRE(ef);
        CHECK(c.compose(ef->m, ef->e) == f);
        CHECK(is_surjective(ef->e));
        CHECK(is_injective(ef->m));
    }
    const Arrow swap = fn("[2,1]:2->2");
    auto ef = fs.factorize(swap);
    CHECK(ef->e == swap);
    CHECK(ef->m == c.identity(2));
}

TEST_CASE("generic choice puts an iso on the left")
{
    FiniteCategory c = finset_category(2);
    TableFS fs = iso_all(c);
    const Arrow swap = *c.parse_arrow("[2,1]:2->2");
    auto ef = fs.factorize(swap);
    REQUIRE(ef);
    CHECK(ef->e == swap);
    CHECK(ef->m == c.identity(2));
}

TEST_CASE("diagonal fillers")
{
    FinSetCategory c(2);
    CHECK(fill_diagonal(c, {fn("[1,1]:2->1"), fn("[1]:1->2"), fn("[1,1]:2->1"), fn("[1]:1->2")}) ==
          fn("[1]:1->1"));
    const Arrow e = fn("[1,1,2]:3->2");
    const Arrow m = fn("[2,3]:2->3");
    CHECK(fill_diagonal(c, {e, m, e, m}) == c.identity(2));
    const Arrow top = fn("[2,1]:2->2");
    const Arrow id = c.identity(2);
    CHECK(fill_diagonal(c, {id, m, top, c.compose(m, top)}) == top);
    // [1,1]:2->1 against itself: top = id_2, bottom = id_1 has no filler
    CHECK_THROWS_AS(fill_diagonal(c, {fn("[1,1]:2->1"), fn("[1,1]:2->1"), id, c.identity(1)}),
                    OrthogonalityError);
}

TEST_CASE("surjections and injections on FinSet up to 3")
{
    FinSetCategory c(3);
    EpiMonoFS fs(c);
    const FsReport rep = check_factorization_system(fs);
    for (const FsClause* cl : rep.clauses())
        CHECK_MESSAGE(cl->verdict == Verdict::pass, cl->name << ": " << cl->detail);
}

TEST_CASE("all and isos fail exactly properness")
{
    FinSetCategory c(2);
    TableFS fs = all_iso(c);
    const FsReport rep = check_factorization_system(fs);
    CHECK(rep.failed() == std::vector<std::string>{"properness"});
    bool found = false;
    for (const auto& w : rep.properness.witnesses) {
        REQUIRE(w.size() == 1);
        CHECK_FALSE(is_surjective(w[0]));
        found = found || w[0] == fn("[1]:1->2");
    }
    CHECK(found);
}

TEST_CASE("isos and all on the 3-chain")
{
    FiniteCategory p = chain_poset(3);
    TableFS fs = iso_all(p);
    const FsReport rep = check_factorization_system(fs);
    CHECK(rep.ok());
    for (const Arrow& f : all_arrows(p)) {
        auto k = classify_morphism(p, f);
        CHECK(k.mono);
        CHECK(k.epi);
    }
}

TEST_CASE("a non-orthogonal pair is caught")
{
    FinSetCategory c(2);
    TableFS fs(
        c, [](const Arrow&) { return true; }, [](const Arrow&) { return true; }, "all-all");
    const FsReport rep = check_factorization_system(fs);
    CHECK(rep.uniqueness.verdict == Verdict::fail);
    CHECK(rep.orthogonality.verdict == Verdict::fail);
}
