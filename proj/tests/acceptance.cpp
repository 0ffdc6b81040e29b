// Acceptance run: one PASS/FAIL line per criterion.

#include "relcheck/audit.hpp"
#include "relcheck/cli.hpp"
#include "relcheck/double_ops.hpp"
#include "relcheck/equivalence.hpp"
#include "relcheck/finset.hpp"
#include "relcheck/formats.hpp"
#include "relcheck/rel_double.hpp"
#include "relcheck/report.hpp"
#include "relcheck/table_double.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace relcheck;

namespace {

struct Criterion {
    int number;
    std::string title;
    double limit_seconds;  // 0: no limit
    std::function<bool(std::ostream&)> run;
};

std::string data(const std::string& name)
{
    return std::string(RELCHECK_DATA_DIR) + "/" + name;
}

// Relations as explicit pair sets, for oracles.
using Pairs = std::set<std::pair<int, int>>;

Pairs pairs_of(const BoolMatrix& m)
{
    Pairs out;
    for (int a = 0; a < m.rows; ++a)
        for (int b = 0; b < m.cols; ++b)
            if ((m.bits >> (a * m.cols + b)) & 1U)
                out.insert({a, b});
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

std::vector<int> table_of(const Arrow& f)
{
    std::vector<int> t;
    for (int i = 0; i < f.src; ++i)
        t.push_back(apply(f, i));
    return t;
}

bool surjective(const Arrow& f)
{
    std::vector<bool> hit(static_cast<std::size_t>(f.tgt));
    for (int v : table_of(f))
        hit[static_cast<std::size_t>(v)] = true;
    for (bool h : hit)
        if (!h)
            return false;
    return true;
}

bool injective(const Arrow& f)
{
    auto t = table_of(f);
    return std::set<int>(t.begin(), t.end()).size() == t.size();
}

int power(int base, int exp)
{
    int r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

bool criterion1(std::ostream& log)
{
    auto d = rel_finset(2);
    std::size_t pairs = 0, bad = 0;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c)
                for (const Pro& p : d->proarrows(a, b))
                    for (const Pro& q : d->proarrows(b, c)) {
                        ++pairs;
                        const BoolMatrix r = MatrixCodec::matrix(p);
                        const BoolMatrix s = MatrixCodec::matrix(q);
                        auto generic = d->hcomp(p, q);
                        if (!generic) {
                            ++bad;
                            continue;
                        }
                        const BoolMatrix g = MatrixCodec::matrix(*generic);
                        const BoolMatrix m = matrix_compose(r, s);
                        if (g != m || pairs_of(g) != compose_pairs(pairs_of(r), pairs_of(s)))
                            ++bad;
                    }
    // Composable pairs over {0,1,2}: sum over a, b, c of 2^(ab) 2^(bc).
    std::size_t expected = 0;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int c = 0; c <= 2; ++c)
                expected += static_cast<std::size_t>(power(2, a * b) * power(2, b * c));
    log << pairs << " composable pairs (expected " << expected << "), " << bad << " mismatches";
    return bad == 0 && pairs == expected;
}

bool criterion2(std::ostream& log)
{
    auto d = rel_finset(2);
    AuditOptions o;
    o.exhaustive = true;
    o.fs = d->fs_ptr();
    auto r = audit(*d, o);
    bool ok = true;
    for (const auto& name : characterization_conditions()) {
        const auto* c = r.find(name);
        const bool good = c && c->verdict == Verdict::pass && c->exhaustive;
        ok = ok && good;
        if (!good)
            log << name << " not an exhaustive pass; ";
    }
    log << "all " << characterization_conditions().size() << " characterization conditions checked, "
        << (r.ok() ? "no failures" : "failures present");
    return ok && r.ok();
}

bool criterion3(std::ostream& log)
{
    auto d2 = rel_finset(2);
    AuditOptions o;
    o.exhaustive = true;
    o.only = {"frobenius"};
    auto r2 = audit(*d2, o);
    const auto& c2 = r2.conditions.at(0);
    const bool small = c2.verdict == Verdict::pass && c2.exhaustive;

    auto d3 = rel_finset(3);
    Auditor a(*d3);
    std::mt19937_64 rng(20260101);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    int triples = 0, failures = 0, oracle_mismatch = 0;
    while (triples < 1000) {
        const int na = uniform(0, 3), nb = uniform(0, 3), nx = uniform(0, 3);
        if (std::max({na, nb, nx}) != 3 || (na > 0 && nb == 0))
            continue;
        std::vector<int> t(static_cast<std::size_t>(na));
        for (int& v : t)
            v = uniform(0, nb - 1);
        const Arrow f = make_function(na, nb, t);
        BoolMatrix r{nb, nx, rng() & ((nb * nx) >= 64 ? ~0ULL : ((1ULL << (nb * nx)) - 1))};
        BoolMatrix s{na, nx, rng() & ((na * nx) >= 64 ? ~0ULL : ((1ULL << (na * nx)) - 1))};
        ++triples;
        Instance x;
        x.arrows = {f};
        x.pros = {MatrixCodec::pro(r), MatrixCodec::pro(s)};
        if (a.check("frobenius", x).verdict != Verdict::pass)
            ++failures;
        // Oracle: R meet (f^* S) as pairs, against the library's composite and meet.
        Pairs lhs;
        for (auto [b, xx] : pairs_of(r))
            for (int i = 0; i < na; ++i)
                if (t[static_cast<std::size_t>(i)] == b && pairs_of(s).count({i, xx}))
                    lhs.insert({b, xx});
        Pairs rhs;
        for (auto [i, xx] : pairs_of(s))
            if (pairs_of(r).count({t[static_cast<std::size_t>(i)], xx}))
                rhs.insert({t[static_cast<std::size_t>(i)], xx});
        auto conj = a.conjoint(f);
        auto fs = conj ? d3->hcomp(conj->pro, MatrixCodec::pro(s)) : std::nullopt;
        auto meet = fs ? find_local_product(*d3, MatrixCodec::pro(r), *fs) : std::nullopt;
        if (!meet || pairs_of(MatrixCodec::matrix(meet->pro)) != lhs || lhs != rhs)
            ++oracle_mismatch;
    }
    log << "exhaustive at 2: " << c2.checked << " instances " << to_string(c2.verdict) << "; size 3: " << triples
        << " seeded triples, " << failures << " failures, " << oracle_mismatch << " oracle mismatches";
    return small && failures == 0 && oracle_mismatch == 0;
}

bool criterion4(std::ostream& log)
{
    auto d = rel_finset(3);
    Auditor a(*d);
    int arrows = 0, wrong = 0;
    for (int x = 0; x <= 3; ++x)
        for (int y = 0; y <= 3; ++y)
            for (const Arrow& f : d->d0().hom(x, y)) {
                ++arrows;
                auto ci = a.classify(f);
                if (ci.cover != surjective(f) || ci.inclusion != injective(f))
                    ++wrong;
            }
    DerivedFS r = a.derive();
    const bool derived = r.error.empty() && r.fs;
    const FsReport rep = derived ? check_factorization_system(*r.fs) : FsReport{};
    int class_wrong = 0;
    if (derived)
        for (const Arrow& f : all_arrows(*r.category))
            class_wrong += r.fs->in_left(f) != surjective(f) || r.fs->in_right(f) != injective(f);
    int expected = 0;
    for (int x = 0; x <= 3; ++x)
        for (int y = 0; y <= 3; ++y)
            expected += power(y, x);
    log << arrows << " morphisms (expected " << expected << "), " << wrong << " misclassified; derived system "
        << (derived ? (rep.ok() ? "passes every clause" : "fails " + rep.failed().front()) : r.error);
    return arrows == expected && wrong == 0 && derived && class_wrong == 0 && rep.ok() && r.report.ok();
}

bool legs_collide(const Span& s)
{
    for (int i = 0; i < s.apex; ++i)
        for (int j = i + 1; j < s.apex; ++j)
            if (apply(s.l, i) == apply(s.l, j) && apply(s.r, i) == apply(s.r, j))
                return true;
    return false;
}

bool criterion5(std::ostream& log)
{
    auto d = span_control(2, 4);
    EquivalenceChecker eq(*d);
    AuditReport r = eq.auditor().run();
    const auto failed = r.failed();
    const std::vector<std::string> expected{"discrete-tabulators", "relations-are-tabulators"};
    bool ok = failed == expected;
    for (const auto& name : expected) {
        const auto* c = r.find(name);
        if (!c || !c->witness) {
            ok = false;
            continue;
        }
        std::string why;
        const bool replayed = eq.auditor().replay(*c->witness, &why);
        auto p = d->parse_pro(c->witness->items.at(0).text);
        const bool brute = p && legs_collide(d->span(*p));
        log << name << " witness " << c->witness->items.at(0).text << (replayed ? " replays" : " does not replay")
            << (brute ? ", legs collide; " : ", no collision; ");
        ok = ok && replayed && brute;
    }
    const auto* frob = r.find("frobenius");
    log << "frobenius " << (frob ? to_string(frob->verdict) : "missing") << "; ";
    AuditReport er = eq.run();
    const auto* c = er.find("equivalence");
    bool explained = false;
    if (c && c->witness)
        for (const auto& item : c->witness->items)
            if (item.kind == "explained-by" &&
                std::find(expected.begin(), expected.end(), item.text) != expected.end())
                explained = true;
    log << "equivalence " << (c ? to_string(c->verdict) : "missing") << (explained ? ", explained" : ", unexplained");
    return ok && c && c->verdict == Verdict::fail && explained && eq.replay(*c->witness);
}

bool criterion6(std::ostream& log)
{
    auto t = rel_finset_table(2);
    AuditOptions o;
    o.exhaustive = true;
    EquivalenceChecker eq(*t, o);
    AuditReport r = eq.run();
    bool ok = true;
    for (const auto& name : equivalence_conditions()) {
        const auto* c = r.find(name);
        const bool good = c && c->verdict == Verdict::pass && c->exhaustive && (name == "equivalence" || c->checked > 0);
        if (!good)
            log << name << " did not pass; ";
        ok = ok && good;
    }
    // G F is the identity on relations, checked against the listed relations.
    int roundtrip = 0, relations = 0;
    if (const RelDouble* rel = eq.rel_side())
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b)
                for (const Pro& p : rel->proarrows(a, b)) {
                    ++relations;
                    auto fr = eq.F(p);
                    auto gfr = fr ? eq.G(fr->pro) : std::nullopt;
                    roundtrip += gfr && *gfr == p;
                }
    log << "eta, epsilon, triangles, phi, gamma all checked exhaustively; GF = id on " << roundtrip << "/"
        << relations << " relations";
    return ok && relations == 31 && roundtrip == relations;
}

bool criterion7(std::ostream& log)
{
    auto d = rel_finset(2);
    Auditor a(*d);
    const Category& c = d->d0();
    int squares = 0, bad = 0;
    for (int x = 0; x <= 2; ++x)
        for (int y = 0; y <= 2; ++y)
            for (int z = 0; z <= 2; ++z)
                for (const Arrow& f : c.hom(x, z))
                    for (const Arrow& g : c.hom(y, z)) {
                        ++squares;
                        auto pb = c.pullback(f, g);
                        if (!pb) {
                            ++bad;
                            continue;
                        }
                        const Arrow& p = pb->legs[0];
                        const Arrow& q = pb->legs[1];
                        // The square is a pullback: its legs enumerate {(a, b) : f a = g b} once each.
                        std::multiset<std::pair<int, int>> got, want;
                        for (int w = 0; w < pb->apex; ++w)
                            got.insert({apply(p, w), apply(q, w)});
                        for (int i = 0; i < x; ++i)
                            for (int j = 0; j < y; ++j)
                                if (apply(f, i) == apply(g, j))
                                    want.insert({i, j});
                        auto cell = a.beck_chevalley_cell(f, g, p, q);
                        if (got != want || !cell || !is_invertible(*d, *cell))
                            ++bad;
                    }
    AuditOptions o;
    o.exhaustive = true;
    o.only = {"beck-chevalley"};
    auto r = audit(*d, o);
    // Cospans into z: (sum over sizes s of z^s)^2.
    int expected = 0;
    for (int z = 0; z <= 2; ++z) {
        int into = 0;
        for (int s = 0; s <= 2; ++s)
            into += power(z, s);
        expected += into * into;
    }
    log << squares << " squares (expected " << expected << "), " << bad << " not invertible; audit condition "
        << to_string(r.conditions.at(0).verdict);
    return squares == expected && bad == 0 && r.ok();
}

bool criterion8(std::ostream& log)
{
    FinSetCategory f3(3);
    TableFS surj_inj(f3, [](const Arrow& f) { return surjective(f); }, [](const Arrow& f) { return injective(f); },
                     "surj-inj");
    const FsReport a = check_factorization_system(surj_inj);
    const FsReport a2 = check_factorization_system(EpiMonoFS(f3));

    FinSetCategory f2(2);
    const TableFS ai = all_iso(f2);
    const FsReport b = check_factorization_system(ai);
    const Arrow w = *parse_function("[1]:1->2");
    bool listed = false;
    for (const auto& inst : b.properness.witnesses)
        listed = listed || (inst.size() == 1 && inst[0] == w);
    // Cancellation scan: two arrows out of 2 that agree after w but differ.
    bool not_epi = false;
    for (const Arrow& g : f2.hom(2, 2))
        for (const Arrow& h : f2.hom(2, 2))
            if (g != h && f2.compose(g, w) == f2.compose(h, w))
                not_epi = true;
    const bool in_e = ai.in_left(w);

    auto chain = load_category(data("chain3.fcat"));
    auto iso_all_fs = load_fs(data("chain3-iso-all.fs"), *chain, data("chain3.fcat"));
    const FsReport c = check_factorization_system(*iso_all_fs);

    log << "(surj, inj) on FinSet<=3 " << (a.ok() && a2.ok() ? "passes" : "fails") << "; (all, iso) fails {";
    for (const auto& n : b.failed())
        log << n;
    log << "}, [1]:1->2 " << (listed ? "listed" : "not listed") << (not_epi ? " and not epi" : " but epi")
        << "; (iso, all) on the 3-chain " << (c.ok() ? "passes" : "fails");
    return a.ok() && a2.ok() && b.failed() == std::vector<std::string>{"properness"} && listed && not_epi && in_e &&
           c.ok();
}

std::string cli(const std::vector<std::string>& args, int* code)
{
    std::ostringstream out, err;
    *code = run_command(args, out, err);
    return out.str();
}

bool criterion9(std::ostream& log)
{
    bool ok = true;
    int runs = 0;
    auto twice = [&](const std::vector<std::string>& args, int expect) {
        int c1 = -1, c2 = -1;
        const std::string a = cli(args, &c1);
        const std::string b = cli(args, &c2);
        ++runs;
        ok = ok && !a.empty() && a == b && c1 == expect && c2 == expect;
        return a;
    };
    twice({"audit", "--category", "finset(2)", "--fs", "epimono", "--format", "dblrep"}, exit_pass);
    twice({"audit", "--double", data("deleted-companion.dblcat"), "--format", "dblrep"}, exit_fail);
    twice({"equivalence", "--double", data("rel2-table.dblcat"), "--format", "dblrep"}, exit_pass);
    twice({"factorize", "--category", "finset(2)", "--fs", data("finset2-all-iso.fs"), "--format", "dblrep"},
          exit_fail);

    // Sampled audits with a fixed seed, in separate auditors.
    auto d = rel_finset(2);
    AuditOptions o;
    o.instance_limit = 100;
    o.samples = 60;
    o.seed = 99;
    auto doc = [&] {
        ReportDocument r;
        r.subject = d->name();
        r.sections.push_back({"audit", audit(*d, o)});
        return emit_dblrep(r);
    };
    const std::string s1 = doc();
    const std::string s2 = doc();
    ++runs;
    const bool sampled = s1.find("exhaustive=no") != std::string::npos;
    ok = ok && s1 == s2 && sampled;
    log << runs << " repeated runs, " << (ok ? "all byte identical" : "differences found");
    return ok;
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "generic composition equals matrix composition over endpoints <= 2", 10, criterion1},
        {2, "full audit of Rel(FinSet<=2) with (surj, inj) passes exhaustively", 120, criterion2},
        {3, "Frobenius exhaustive at <= 2 and on 1000 seeded triples at size 3", 120, criterion3},
        {4, "derived factorization system on Rel(FinSet<=3) is (surj, inj)", 0, criterion4},
        {5, "span control fails discreteness and relations-are-tabulators", 0, criterion5},
        {6, "equivalence with the table copy of Rel(FinSet<=2)", 120, criterion6},
        {7, "Beck-Chevalley for all pullback squares in FinSet<=2", 0, criterion7},
        {8, "factorization-system checker controls", 0, criterion8},
        {9, "byte-identical .dblrep across runs", 0, criterion9},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        std::ostringstream log;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(log);
        } catch (const std::exception& e) {
            log << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_seconds > 0 && secs > c.limit_seconds) {
            log << "; over the " << c.limit_seconds << " s limit";
            ok = false;
        }
        failed += !ok;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " [" << timing
                  << "] " << log.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
