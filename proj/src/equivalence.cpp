#include "relcheck/equivalence.hpp"

#include "instance_space.hpp"

#include "relcheck/double_ops.hpp"
#include "relcheck/finset.hpp"
#include "relcheck/limits.hpp"
#include "relcheck/table_double.hpp"

#include <algorithm>
#include <chrono>

namespace relcheck {

using namespace detail;

const std::vector<std::string>& equivalence_conditions()
{
    static const std::vector<std::string> names = {
        "build-F",     "build-G",    "eta-invertible", "epsilon-invertible", "triangle-F", "triangle-G",
        "phi-invertible", "gamma-invertible", "unitality", "naturality", "equivalence",
    };
    return names;
}

namespace {

std::shared_ptr<const Category> shared_d0(const DoubleCategory& d)
{
    if (auto t = dynamic_cast<const TableDouble*>(&d))
        return t->d0_ptr();
    if (auto r = dynamic_cast<const RelDouble*>(&d))
        return r->d0_ptr();
    return std::shared_ptr<const Category>(std::shared_ptr<const Category>{}, &d.d0());
}

// Conditions whose instances live on the Rel side.
bool rel_instances(const std::string& name, const std::string& tag)
{
    return name == "build-F" || name == "eta-invertible" || name == "triangle-F" || name == "phi-invertible" ||
           (name == "naturality" && tag == "eta");
}

}  // namespace

struct EquivalenceChecker::State {
    bool tried = false;
    std::unique_ptr<RelDouble> rel;
    std::string error;
    std::map<Pro, std::optional<CartesianCellData>> F;
    std::map<Pro, std::optional<Pro>> G;
    std::map<Arrow, bool> unit_opcartesian;
};

EquivalenceChecker::EquivalenceChecker(const DoubleCategory& d, AuditOptions opt)
    : d_(&d), opt_(opt), auditor_(std::make_unique<Auditor>(d, opt)), st_(std::make_unique<State>())
{
}

EquivalenceChecker::~EquivalenceChecker() = default;

const RelDouble* EquivalenceChecker::rel_side()
{
    if (!st_->tried) {
        st_->tried = true;
        auto amb = auditor_->ambient();
        if (!amb.fs)
            st_->error = "no factorization system on D0: " + amb.origin;
        else
            st_->rel = build_rel_double(shared_d0(*d_), amb.fs, false);
    }
    return st_->rel.get();
}

std::string EquivalenceChecker::rel_side_error()
{
    rel_side();
    return st_->error;
}

std::optional<CartesianCellData> EquivalenceChecker::F(const Pro& r)
{
    auto it = st_->F.find(r);
    if (it != st_->F.end())
        return it->second;
    std::optional<CartesianCellData> out;
    if (const RelDouble* rel = rel_side()) {
        const Span s = rel->span(r);
        if (auto y = d_->unit(s.apex))
            out = find_extension(*d_, s.l, *y, s.r);
    }
    st_->F.emplace(r, out);
    return out;
}

std::optional<Pro> EquivalenceChecker::G(const Pro& p)
{
    auto it = st_->G.find(p);
    if (it != st_->G.end())
        return it->second;
    std::optional<Pro> out;
    const RelDouble* rel = rel_side();
    auto t = auditor_->tabulator(p);
    if (rel && t)
        out = rel->encode(Span{t->apex, t->l, t->r});
    st_->G.emplace(p, out);
    return out;
}

namespace {

// The arrow from the canonical apex of G(p) to the tabulator apex of p.
std::optional<Arrow> apex_iso(const Category& c, const Span& canonical, const TabulatorData& t)
{
    return c.lift(canonical.l, t.l, &canonical.r, &t.r);
}

}  // namespace

std::optional<Arrow> EquivalenceChecker::eta(const Pro& r)
{
    const RelDouble* rel = rel_side();
    auto fr = F(r);
    if (!rel || !fr)
        return std::nullopt;
    auto gfr = G(fr->pro);
    auto t = auditor_->tabulator(fr->pro);
    if (!gfr || !t)
        return std::nullopt;
    const Category& c = d_->d0();
    auto u = tabulator_factor(*d_, *t, fr->cell);
    auto theta = apex_iso(c, rel->span(*gfr), *t);
    auto back = theta ? inverse(c, *theta) : std::nullopt;
    if (!u || !back)
        return std::nullopt;
    return c.compose(*back, *u);
}

std::optional<Cell> EquivalenceChecker::epsilon(const Pro& p)
{
    const RelDouble* rel = rel_side();
    auto gp = G(p);
    auto t = auditor_->tabulator(p);
    if (!rel || !gp || !t)
        return std::nullopt;
    auto fgp = F(*gp);
    const Span s = rel->span(*gp);
    auto theta = apex_iso(d_->d0(), s, *t);
    auto ytheta = theta ? d_->unit_cell(*theta) : std::nullopt;
    if (!fgp || !ytheta)
        return std::nullopt;
    const Category& c = d_->d0();
    return factor_opcartesian(*d_, fgp->cell, d_->vcomp(*ytheta, t->counit), c.identity(p.src),
                              c.identity(p.tgt));
}

std::optional<Arrow> EquivalenceChecker::G_cell(const Cell& a)
{
    const RelDouble* rel = rel_side();
    auto tp = auditor_->tabulator(a.top);
    auto tq = auditor_->tabulator(a.bottom);
    auto gp = G(a.top);
    auto gq = G(a.bottom);
    if (!rel || !tp || !tq || !gp || !gq)
        return std::nullopt;
    const Category& c = d_->d0();
    auto u = tabulator_factor(*d_, *tq, d_->vcomp(tp->counit, a));
    auto theta_p = apex_iso(c, rel->span(*gp), *tp);
    auto theta_q = apex_iso(c, rel->span(*gq), *tq);
    auto back_q = theta_q ? inverse(c, *theta_q) : std::nullopt;
    if (!u || !theta_p || !back_q)
        return std::nullopt;
    return c.compose(*back_q, c.compose(*u, *theta_p));
}

std::optional<Cell> EquivalenceChecker::F_cell(const Cell& a)
{
    const RelDouble* rel = rel_side();
    auto fr = F(a.top);
    auto fs = F(a.bottom);
    if (!rel || !fr || !fs)
        return std::nullopt;
    auto ym = d_->unit_cell(rel->mediator(a));
    if (!ym)
        return std::nullopt;
    const Category& c = d_->d0();
    return factor_opcartesian(*d_, fr->cell, d_->vcomp(*ym, fs->cell), c.identity(a.top.src),
                              c.identity(a.top.tgt));
}

std::optional<Cell> EquivalenceChecker::phi(const Pro& r, const Pro& s, std::string* why)
{
    auto say = [&](std::string text) -> std::optional<Cell> {
        if (why)
            *why = std::move(text);
        return std::nullopt;
    };
    const RelDouble* rel = rel_side();
    if (!rel)
        return say(st_->error);
    const Category& c = d_->d0();
    auto rs = rel->hcomp(r, s);
    if (!rs)
        return say("the relational composite is not representable");
    const Span sr = rel->span(r);
    const Span ss = rel->span(s);
    const Span si = rel->span(*rs);
    auto pb = c.pullback(sr.r, ss.l);
    if (!pb)
        return say("no pullback of the relation legs");
    const Arrow& p1 = pb->legs[0];
    const Arrow& p2 = pb->legs[1];
    const Arrow h1 = c.compose(sr.l, p1);
    const Arrow h2 = c.compose(ss.r, p2);
    auto e = c.lift(h1, si.l, &h2, &si.r);
    if (!e)
        return say("the pullback does not map onto the composite");
    auto cone = covering_cone(*d_, rel->fs(), *e);
    if (!cone)
        return say("no covering cone over the composite");
    auto fr = F(r);
    auto fs = F(s);
    auto frs = F(*rs);
    if (!fr || !fs || !frs)
        return say("F is not defined on the relations");
    auto beta = paste_beside(*d_, c.compose(p1, cone->lift), fr->cell, c.compose(p2, cone->lift), fs->cell);
    if (!beta)
        return say("F(R) (x) F(S) is not in the table");
    auto yu = d_->unit_cell(cone->w);
    if (!yu)
        return say("no unit cell on the covering arrow");
    auto it = st_->unit_opcartesian.find(cone->w);
    if (it == st_->unit_opcartesian.end())
        it = st_->unit_opcartesian.emplace(cone->w, is_opcartesian(*d_, *yu)).first;
    if (!it->second)
        return say("y_u is not opcartesian for the covering arrow " + c.arrow_name(cone->w));
    auto out = factor_opcartesian(*d_, d_->vcomp(*yu, frs->cell), *beta, c.identity(r.src), c.identity(s.tgt));
    if (!out)
        return say("the pasted cell does not factor through F(R (.) S)");
    return out;
}

namespace {

std::vector<Block> equivalence_blocks(EquivalenceChecker& ec, const DoubleCategory& d, const std::string& name)
{
    const RelDouble* rel = ec.rel_side();
    const auto s = ec.auditor().support();
    std::vector<Block> out;
    if (!rel) {
        if (name == "build-F")
            out.emplace_back();
        return out;
    }
    auto rels = [&](int a, int b) { return rel->proarrows(a, b); };
    auto pros = [&](int a, int b) { return d.proarrows(a, b); };
    if (name == "build-F" || name == "eta-invertible" || name == "triangle-F" || name == "build-G" ||
        name == "epsilon-invertible" || name == "triangle-G") {
        const bool on_rel = rel_instances(name, "");
        for (int a : s)
            for (int b : s) {
                Block bl;
                bl.size = a + b;
                bl.pros = {on_rel ? rels(a, b) : pros(a, b)};
                out.push_back(std::move(bl));
            }
    } else if (name == "phi-invertible" || name == "gamma-invertible") {
        const bool on_rel = name == "phi-invertible";
        for (int a : s)
            for (int b : s)
                for (int c : s) {
                    Block bl;
                    bl.size = a + b + c;
                    bl.pros = on_rel ? std::vector<std::vector<Pro>>{rels(a, b), rels(b, c)}
                                     : std::vector<std::vector<Pro>>{pros(a, b), pros(b, c)};
                    out.push_back(std::move(bl));
                }
    } else if (name == "unitality") {
        for (int a : s) {
            Block bl;
            bl.size = a;
            bl.arrows = {{d.d0().identity(a)}};
            out.push_back(std::move(bl));
        }
    } else if (name == "naturality") {
        for (int a : s)
            for (int b : s) {
                Block e;
                e.size = 2 * (a + b);
                e.tag = "eta";
                e.pros = {rels(a, b), rels(a, b)};
                out.push_back(e);
                Block f;
                f.size = 2 * (a + b);
                f.tag = "epsilon";
                f.pros = {pros(a, b), pros(a, b)};
                out.push_back(f);
            }
    } else {
        throw std::invalid_argument("unknown equivalence condition: " + name);
    }
    return out;
}

}  // namespace

ConditionResult EquivalenceChecker::run_condition(const std::string& name)
{
    if (name == "equivalence")
        throw std::invalid_argument("the equivalence verdict needs the full run");
    if (!rel_side() && name != "build-F") {
        ConditionResult r;
        r.name = name;
        r.verdict = Verdict::skip;
        r.detail = st_->error;
        return r;
    }
    return run_blocks(
        name, equivalence_blocks(*this, *d_, name), opt_, [&](const Instance& x) { return check(name, x); },
        [&](const Instance& x) {
            std::vector<WitnessItem> items;
            if (!x.tag.empty())
                items.push_back({"case", x.tag});
            for (const Arrow& f : x.arrows)
                items.push_back({"arrow", d_->d0().arrow_name(f)});
            const bool on_rel = rel_instances(name, x.tag);
            for (const Pro& p : x.pros)
                items.push_back({on_rel ? "relation" : "pro", on_rel ? rel_side()->pro_name(p) : d_->pro_name(p)});
            return items;
        });
}

Outcome EquivalenceChecker::check(const std::string& name, const Instance& x)
{
    const RelDouble* rel = rel_side();
    if (!rel)
        return name == "build-F" ? fail(st_->error) : skip(st_->error);
    const DoubleCategory& d = *d_;
    const Category& c = d.d0();
    try {
        if (name == "build-F") {
            if (!F(x.pros.at(0)))
                return fail("no extension of the apex unit along the relation legs");
            return pass();
        }
        if (name == "build-G") {
            const Pro& p = x.pros.at(0);
            if (!auditor_->tabulator(p))
                return fail("no tabulator");
            if (!G(p))
                return fail("the tabulator span is not a relation");
            return pass();
        }
        if (name == "eta-invertible") {
            if (!F(x.pros.at(0)))
                return skip("F is not defined");
            auto e = eta(x.pros.at(0));
            if (!e)
                return fail("no unit component");
            if (!inverse(c, *e))
                return fail("the unit component " + c.arrow_name(*e) + " is not invertible");
            return pass();
        }
        if (name == "epsilon-invertible") {
            if (!G(x.pros.at(0)))
                return skip("G is not defined");
            auto e = epsilon(x.pros.at(0));
            if (!e)
                return fail("no counit component");
            if (!is_invertible(d, *e))
                return fail("the counit component is not invertible");
            return pass();
        }
        if (name == "triangle-F") {
            const Pro& r = x.pros.at(0);
            auto fr = F(r);
            if (!fr)
                return skip("F is not defined");
            auto gfr = G(fr->pro);
            auto e = eta(r);
            if (!gfr || !e)
                return skip("G or the unit is not defined");
            auto cells = rel->cells(c.identity(r.src), c.identity(r.tgt), r, *gfr);
            if (cells.size() != 1 || rel->mediator(cells[0]) != *e)
                return fail("the unit is not a morphism of relations");
            auto f_eta = F_cell(cells[0]);
            auto eps = epsilon(fr->pro);
            if (!f_eta || !eps)
                return fail("F(eta) or the counit is missing");
            if (d.vcomp(*f_eta, *eps) != d.identity_cell(fr->pro))
                return fail("epsilon_F o F(eta) is not the identity");
            return pass();
        }
        if (name == "triangle-G") {
            const Pro& p = x.pros.at(0);
            auto gp = G(p);
            if (!gp)
                return skip("G is not defined");
            auto e = eta(*gp);
            auto eps = epsilon(p);
            if (!e || !eps)
                return fail("the unit or counit is missing");
            auto g_eps = G_cell(*eps);
            if (!g_eps)
                return fail("G(epsilon) is missing");
            const Span s = rel->span(*gp);
            if (c.compose(*g_eps, *e) != c.identity(s.apex))
                return fail("G(epsilon) o eta_G is not the identity");
            return pass();
        }
        if (name == "phi-invertible") {
            std::string why;
            auto p = phi(x.pros.at(0), x.pros.at(1), &why);
            if (!p)
                return fail("no comparison cell: " + why);
            if (!is_invertible(d, *p))
                return fail("the comparison cell is not invertible");
            return pass();
        }
        if (name == "gamma-invertible") {
            const Pro& p = x.pros.at(0);
            const Pro& q = x.pros.at(1);
            if (!d.hcomp(p, q))
                return skip("p (x) q is not in the table");
            std::string why;
            auto g = auditor_->lax_comparison(p, q, &why);
            if (!g)
                return fail("no comparison arrow: " + why);
            if (!inverse(c, *g))
                return fail("the comparison " + c.arrow_name(*g) + " is not invertible");
            return pass();
        }
        if (name == "unitality") {
            const int a = x.arrows.at(0).src;
            auto delta = rel->unit(a);
            auto ya = d.unit(a);
            if (!delta || !ya)
                return skip("no unit");
            auto fd = F(*delta);
            if (!fd || !equivalent(d, fd->pro, *ya))
                return fail("F does not preserve the unit");
            auto gy = G(*ya);
            if (!gy || *gy != *delta)
                return fail("G does not preserve the unit");
            return pass();
        }
        if (name == "naturality") {
            const Pro& p = x.pros.at(0);
            const Pro& q = x.pros.at(1);
            const Arrow ia = c.identity(p.src);
            const Arrow ib = c.identity(p.tgt);
            if (x.tag == "eta") {
                for (const Cell& a : rel->cells(ia, ib, p, q)) {
                    auto ep = eta(p);
                    auto eq = eta(q);
                    auto fa = F_cell(a);
                    auto gfa = fa ? G_cell(*fa) : std::nullopt;
                    if (!ep || !eq || !gfa)
                        return skip("the unit or GF is not defined");
                    if (c.compose(*gfa, *ep) != c.compose(*eq, rel->mediator(a)))
                        return fail("the unit is not natural");
                }
                return pass();
            }
            for (const Cell& a : d.cells(ia, ib, p, q)) {
                auto gp = G(p);
                auto gq = G(q);
                auto ga = G_cell(a);
                auto ep = epsilon(p);
                auto eq = epsilon(q);
                if (!gp || !gq || !ga || !ep || !eq)
                    return skip("the counit or FG is not defined");
                auto rc = rel->cells(ia, ib, *gp, *gq);
                if (rc.size() != 1 || rel->mediator(rc[0]) != *ga)
                    return fail("G(a) is not a morphism of relations");
                auto fga = F_cell(rc[0]);
                if (!fga)
                    return skip("FG is not defined");
                if (d.vcomp(*fga, *eq) != d.vcomp(*ep, a))
                    return fail("the counit is not natural");
            }
            return pass();
        }
    } catch (const UniverseError& e) {
        return skip(std::string("outside the finite universe: ") + e.what());
    } catch (const BoundaryError& e) {
        return fail(std::string("table error: ") + e.what());
    } catch (const UnknownIdError& e) {
        return fail(std::string("table error: ") + e.what());
    }
    throw std::invalid_argument("unknown equivalence condition: " + name);
}

AuditReport EquivalenceChecker::run()
{
    auto t0 = std::chrono::steady_clock::now();
    AuditReport rep;
    rep.subject = d_->name();
    int wid = 0;
    std::vector<std::string> not_passed;
    std::vector<WitnessItem> listed;
    for (const auto& name : equivalence_conditions()) {
        if (name == "equivalence")
            break;
        auto r = run_condition(name);
        if (r.verdict != Verdict::pass) {
            not_passed.push_back(name);
            listed.push_back({r.verdict == Verdict::fail ? "failed" : "skipped", name});
        }
        if (r.witness)
            r.witness->id = "w" + std::to_string(++wid);
        rep.conditions.push_back(std::move(r));
    }
    ConditionResult eq;
    eq.name = "equivalence";
    eq.checked = 1;
    if (not_passed.empty()) {
        eq.detail = "F and G form an adjoint equivalence";
    } else {
        eq.verdict = Verdict::fail;
        Witness w;
        w.id = "w" + std::to_string(++wid);
        w.condition = "equivalence";
        w.items = listed;
        std::vector<std::string> explained;
        for (const auto& n : characterization_conditions())
            if (auditor_->run_condition(n).verdict == Verdict::fail)
                explained.push_back(n);
        for (const auto& n : explained)
            w.items.push_back({"explained-by", n});
        eq.detail = "not an equivalence: " + join(not_passed, ", ");
        if (!explained.empty())
            eq.detail += "; explained by " + join(explained, ", ");
        eq.witness = std::move(w);
    }
    rep.conditions.push_back(std::move(eq));
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

bool EquivalenceChecker::replay(const Witness& w, std::string* why)
{
    auto say = [&](std::string s) {
        if (why)
            *why = std::move(s);
        return false;
    };
    const auto& names = equivalence_conditions();
    if (std::find(names.begin(), names.end(), w.condition) == names.end())
        return say("unknown condition " + w.condition);
    if (w.condition == "equivalence") {
        bool any = false;
        for (const auto& item : w.items) {
            if (item.kind == "failed" || item.kind == "skipped") {
                if (std::find(names.begin(), names.end(), item.text) == names.end() || item.text == "equivalence")
                    return say("unknown condition " + item.text);
                const Verdict v = run_condition(item.text).verdict;
                if (v != (item.kind == "failed" ? Verdict::fail : Verdict::skip))
                    return say(item.text + " is " + to_string(v) + ", not " + item.kind);
                any = true;
            } else if (item.kind == "explained-by") {
                if (auditor_->run_condition(item.text).verdict != Verdict::fail)
                    return say(item.text + " does not fail");
            } else if (item.kind != "note") {
                return say("unknown witness item " + item.kind);
            }
        }
        return any ? true : say("every listed condition passes");
    }
    const RelDouble* rel = rel_side();
    Instance x;
    for (const auto& item : w.items) {
        if (item.kind == "case") {
            x.tag = item.text;
        } else if (item.kind == "arrow") {
            auto f = d_->d0().parse_arrow(item.text);
            if (!f)
                return say("unknown arrow " + item.text);
            x.arrows.push_back(*f);
        } else if (item.kind == "pro" || item.kind == "relation") {
            const bool on_rel = item.kind == "relation";
            if (on_rel && !rel)
                return say("no relation side: " + st_->error);
            auto p = on_rel ? rel->parse_pro(item.text) : d_->parse_pro(item.text);
            if (!p)
                return say("unknown " + item.kind + " " + item.text);
            x.pros.push_back(*p);
        } else if (item.kind != "note") {
            return say("unknown witness item " + item.kind);
        }
    }
    try {
        Outcome o = check(w.condition, x);
        if (o.verdict != Verdict::fail)
            return say(std::string("the instance ") + to_string(o.verdict) + "es");
    } catch (const std::exception& e) {
        return say(std::string("the witness does not fit the condition: ") + e.what());
    }
    return true;
}

AuditReport check_equivalence(const DoubleCategory& d, const AuditOptions& opt)
{
    EquivalenceChecker ec(d, opt);
    return ec.run();
}

}  // namespace relcheck
