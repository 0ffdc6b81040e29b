#include "doctest.h"

#include "relcheck/double_ops.hpp"
#include "relcheck/equivalence.hpp"
#include "relcheck/limits.hpp"
#include "relcheck/table_double.hpp"

#include "generators.hpp"

using namespace relcheck;

namespace {

int pair_count(const BoolMatrix& m)
{
    int n = 0;
    for (int i = 0; i < m.rows * m.cols; ++i)
        n += static_cast<int>((m.bits >> i) & 1U);
    return n;
}

}  // namespace

TEST_CASE("Rel(FinSet) table copy is equivalent to Rel of its base")
{
    auto d = rel_finset_table(2);
    AuditOptions o;
    o.exhaustive = true;
    auto r = check_equivalence(*d, o);
    REQUIRE(r.conditions.size() == equivalence_conditions().size());
    for (const auto& c : r.conditions) {
        CHECK_MESSAGE(c.verdict == Verdict::pass, c.name << ": " << c.detail);
        CHECK(c.exhaustive);
    }
    CHECK(r.find("phi-invertible")->checked == 499);
    CHECK(r.find("gamma-invertible")->checked == 499);
}

TEST_CASE("F and G on the table copy")
{
    auto d = rel_finset_table(2);
    EquivalenceChecker ec(*d);
    const RelDouble* rel = ec.rel_side();
    REQUIRE(rel);
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (const Pro& r : rel->proarrows(a, b)) {
                auto f = ec.F(r);
                REQUIRE(f);
                CHECK(f->pro.src == a);
                CHECK(f->pro.tgt == b);
                auto g = ec.G(f->pro);
                REQUIRE(g);
                CHECK(*g == r);  // matrices are canonical
                auto e = ec.eta(r);
                REQUIRE(e);
                CHECK(e->src == pair_count(MatrixCodec::matrix(r)));
                CHECK(inverse(d->d0(), *e));
            }
}

TEST_CASE("phi cells are globular isomorphisms")
{
    auto d = rel_finset_table(2);
    EquivalenceChecker ec(*d);
    const RelDouble* rel = ec.rel_side();
    REQUIRE(rel);
    testing::Gen gen(5);
    for (int i = 0; i < 40; ++i) {
        int a = gen.size(0, 2), b = gen.size(0, 2), c = gen.size(0, 2);
        Pro r = MatrixCodec::pro(gen.relation(a, b));
        Pro s = MatrixCodec::pro(gen.relation(b, c));
        std::string why;
        auto p = ec.phi(r, s, &why);
        REQUIRE_MESSAGE(p, why);
        CHECK(is_globular(*d, *p));
        CHECK(is_invertible(*d, *p));
    }
}

TEST_CASE("deleted companion control is explained by equipment")
{
    auto d = deleted_companion_control();
    EquivalenceChecker ec(*d);
    auto r = ec.run();
    CHECK(r.find("build-F")->verdict == Verdict::fail);
    CHECK(r.find("build-G")->verdict == Verdict::skip);
    const auto* eq = r.find("equivalence");
    REQUIRE(eq);
    CHECK(eq->verdict == Verdict::fail);
    REQUIRE(eq->witness);
    CHECK(std::count(eq->witness->items.begin(), eq->witness->items.end(), WitnessItem{"explained-by", "equipment"}) ==
          1);
    std::string why;
    CHECK_MESSAGE(ec.replay(*eq->witness, &why), why);
    CHECK_MESSAGE(ec.replay(*r.find("build-F")->witness, &why), why);
}

TEST_CASE("equivalence replay rejects passing instances")
{
    auto d = rel_finset_table(2);
    EquivalenceChecker ec(*d);
    std::string why;
    CHECK_FALSE(ec.replay(Witness{"w1", "build-G", {{"pro", d->pro_name(*d->unit(1))}}}, &why));
    CHECK_FALSE(ec.replay(Witness{"w1", "equivalence", {{"failed", "build-F"}}}, &why));
    CHECK_FALSE(ec.replay(Witness{"w1", "triangle-F", {{"relation", "garbage"}}}, &why));
}
