#include "relcheck/audit.hpp"

#include "instance_space.hpp"

#include "relcheck/double_ops.hpp"
#include "relcheck/finset.hpp"
#include "relcheck/limits.hpp"
#include "relcheck/rel_double.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace relcheck {

const std::vector<std::string>& characterization_conditions()
{
    static const std::vector<std::string> names = {
        "unit-pure",           "equipment",           "cartesian",
        "tabulators",          "strong-tabulators",   "discrete-tabulators",
        "functorial-tabulators", "relations-are-tabulators", "frobenius",
    };
    return names;
}

const std::vector<std::string>& audit_conditions()
{
    static const std::vector<std::string> names = [] {
        auto v = characterization_conditions();
        for (const char* n : {"beck-chevalley", "kernels", "cover-inclusion", "idempotence", "properness-lemma",
                              "pullbacks-via-tabulators", "factorization-system"})
            v.emplace_back(n);
        return v;
    }();
    return names;
}

const ConditionResult* AuditReport::find(std::string_view name) const
{
    for (const auto& c : conditions)
        if (c.name == name)
            return &c;
    return nullptr;
}

bool AuditReport::ok() const
{
    return failed().empty();
}

std::vector<std::string> AuditReport::failed() const
{
    std::vector<std::string> out;
    for (const auto& c : conditions)
        if (c.verdict == Verdict::fail)
            out.push_back(c.name);
    return out;
}

using namespace detail;

struct Auditor::Caches {
    std::map<Arrow, std::optional<CompanionData>> companion, conjoint;
    std::map<Pro, std::optional<TabulatorData>> tabulator;
    std::map<Arrow, CoverInclusion> classify;
    std::map<Pro, std::vector<Cell>> into;
    std::map<std::pair<Pro, Pro>, std::optional<ProductData>> local;
    std::map<Arrow, bool> unit_opcartesian;
    std::optional<DerivedFS> derived;
    std::optional<AmbientFS> ambient;
    bool have_support_category = false;
    std::shared_ptr<const Category> support_category;
    std::optional<std::vector<int>> support;
};

Auditor::Auditor(const DoubleCategory& d, AuditOptions opt)
    : d_(&d), opt_(std::move(opt)), cache_(std::make_unique<Caches>())
{
}

Auditor::~Auditor() = default;

std::vector<int> Auditor::support() const
{
    if (cache_->support)
        return *cache_->support;
    std::vector<int> out;
    for (int x : d_->support())
        if (opt_.max_size < 0 || x <= opt_.max_size)
            out.push_back(x);
    cache_->support = out;
    return out;
}

std::shared_ptr<const Category> Auditor::support_category()
{
    if (cache_->have_support_category)
        return cache_->support_category;
    cache_->have_support_category = true;
    auto s = support();
    auto w = d_->window();
    if (s == w) {
        cache_->support_category = std::shared_ptr<const Category>(std::shared_ptr<const Category>{}, &d_->d0());
    } else if (dynamic_cast<const FinSetCategory*>(&d_->d0())) {
        bool initial = !s.empty();
        for (std::size_t i = 0; i < s.size(); ++i)
            initial = initial && s[i] == static_cast<int>(i);
        if (initial)
            cache_->support_category = std::make_shared<FinSetCategory>(s.back());
    }
    return cache_->support_category;
}

std::optional<CompanionData> Auditor::companion(const Arrow& f)
{
    auto it = cache_->companion.find(f);
    if (it == cache_->companion.end())
        it = cache_->companion.emplace(f, find_companion(*d_, f)).first;
    return it->second;
}

std::optional<CompanionData> Auditor::conjoint(const Arrow& f)
{
    auto it = cache_->conjoint.find(f);
    if (it == cache_->conjoint.end())
        it = cache_->conjoint.emplace(f, find_conjoint(*d_, f)).first;
    return it->second;
}

std::optional<TabulatorData> Auditor::tabulator(const Pro& p)
{
    auto it = cache_->tabulator.find(p);
    if (it == cache_->tabulator.end())
        it = cache_->tabulator.emplace(p, find_tabulator(*d_, p)).first;
    return it->second;
}

std::optional<Cell> Auditor::cokernel_cone(const Arrow& f)
{
    auto comp = companion(f);
    auto conj = conjoint(f);
    auto ya = d_->unit(f.src);
    if (!comp || !conj || !ya)
        return std::nullopt;
    auto lam = d_->left_unitor(*ya);
    if (!lam)
        return std::nullopt;
    auto lam_inv = cell_inverse(*d_, *lam);
    auto side = d_->hcomp(conj->unit, comp->unit);
    if (!lam_inv || !side)
        return std::nullopt;
    return d_->vcomp(*lam_inv, *side);
}

std::optional<Cell> Auditor::beck_chevalley_cell(const Arrow& f, const Arrow& g, const Arrow& p, const Arrow& q)
{
    auto pc = conjoint(p);
    auto fc = companion(f);
    auto qc = companion(q);
    auto gc = conjoint(g);
    if (!pc || !fc || !qc || !gc)
        return std::nullopt;
    Cell left = d_->vcomp(pc->counit, fc->unit);
    Cell right = d_->vcomp(qc->counit, gc->unit);
    return d_->hcomp(left, right);
}

CoverInclusion Auditor::classify(const Arrow& f)
{
    auto it = cache_->classify.find(f);
    if (it != cache_->classify.end())
        return it->second;
    CoverInclusion ci;
    auto comp = companion(f);
    auto conj = conjoint(f);
    if (comp && conj) {
        // f^* (x) f_! => y_B (x) y_B => y_B
        auto yb = d_->unit(f.tgt);
        auto side = d_->hcomp(conj->counit, comp->counit);
        auto lam = yb ? d_->left_unitor(*yb) : std::nullopt;
        if (side && lam) {
            ci.cover_by_cell = true;
            ci.cover = is_invertible(*d_, d_->vcomp(*side, *lam));
        }
        // y_A => y_A (x) y_A => f_! (x) f^*
        auto ya = d_->unit(f.src);
        auto lam_a = ya ? d_->left_unitor(*ya) : std::nullopt;
        auto lam_inv = lam_a ? cell_inverse(*d_, *lam_a) : std::nullopt;
        auto up = d_->hcomp(comp->unit, conj->unit);
        if (lam_inv && up) {
            ci.inclusion_by_cell = true;
            ci.inclusion = is_invertible(*d_, d_->vcomp(*lam_inv, *up));
        }
    }
    if (!ci.cover_by_cell || !ci.inclusion_by_cell) {
        auto yf = d_->unit_cell(f);
        if (!ci.cover_by_cell)
            ci.cover = yf && is_opcartesian(*d_, *yf);
        if (!ci.inclusion_by_cell)
            ci.inclusion = yf && is_cartesian(*d_, *yf);
    }
    cache_->classify.emplace(f, ci);
    return ci;
}

DerivedFS Auditor::derive()
{
    if (cache_->derived)
        return *cache_->derived;
    DerivedFS out;
    out.category = support_category();
    if (!out.category) {
        out.error = "the support is not a full subcategory the checker can build";
        cache_->derived = out;
        return out;
    }
    const Category& c = *out.category;
    std::set<Arrow> left, right;
    std::map<Arrow, Factorization> pins;
    for (const Arrow& f : all_arrows(c)) {
        auto ci = classify(f);
        if (ci.cover)
            left.insert(f);
        if (ci.inclusion)
            right.insert(f);
    }
    std::vector<int> objs = c.objects();
    std::set<int> objset(objs.begin(), objs.end());
    for (const Arrow& f : all_arrows(c)) {
        auto comp = companion(f);
        auto conj = conjoint(f);
        auto ck = comp && conj ? d_->hcomp(conj->pro, comp->pro) : std::nullopt;
        auto beta = cokernel_cone(f);
        auto t = ck ? tabulator(*ck) : std::nullopt;
        auto e = t && beta ? tabulator_factor(*d_, *t, *beta) : std::nullopt;
        if (!e || !objset.count(t->apex)) {
            out.error = "no canonical factorization of " + d_->d0().arrow_name(f);
            cache_->derived = out;
            return out;
        }
        pins[f] = Factorization{*e, t->l};
    }
    out.fs = std::make_shared<TableFS>(c, std::move(left), std::move(right), "derived");
    for (const auto& [f, ef] : pins)
        out.fs->pin(f, ef);
    out.report = check_factorization_system(*out.fs);
    cache_->derived = out;
    return out;
}

AmbientFS Auditor::ambient()
{
    if (cache_->ambient)
        return *cache_->ambient;
    AmbientFS out;
    if (opt_.fs) {
        out = {opt_.fs, "given"};
    } else if (auto rel = dynamic_cast<const RelDouble*>(d_)) {
        out = {rel->fs_ptr(), "given"};
    } else {
        std::string reason;
        if (dynamic_cast<const FinSetCategory*>(&d_->d0())) {
            bool agree = true;
            for (int a : support()) {
                for (int b : support()) {
                    for (const Arrow& f : d_->d0().hom(a, b)) {
                        auto ci = classify(f);
                        if (ci.cover != is_surjective(f) || ci.inclusion != is_injective(f)) {
                            agree = false;
                            reason = "covers and inclusions are not (surjective, injective) at " +
                                     d_->d0().arrow_name(f);
                            break;
                        }
                    }
                    if (!agree)
                        break;
                }
                if (!agree)
                    break;
            }
            if (agree)
                out = {std::make_shared<EpiMonoFS>(d_->d0()), "epimono"};
        }
        if (!out.fs) {
            auto dfs = derive();
            if (dfs.ok() && support() == d_->window())
                out = {dfs.fs, "derived"};
            else if (reason.empty())
                reason = dfs.ok() ? "the derived system does not cover the window"
                                  : (dfs.error.empty() ? "the derived classes are not a proper stable system"
                                                       : dfs.error);
            if (!out.fs)
                out.origin = reason;
        }
    }
    cache_->ambient = out;
    return out;
}

std::optional<CoveringCone> covering_cone(const DoubleCategory& d, const FactorizationSystem& fs, const Arrow& e)
{
    const Category& c = d.d0();
    std::vector<int> xs = d.window();
    for (int x = xs.empty() ? 0 : xs.back() + 1; x <= e.src; ++x)
        if (c.is_object(x))
            xs.push_back(x);
    for (int x : xs) {
        if (!d.has_unit(x) || c.hom_count(x, e.tgt) > (1u << 20))
            continue;
        for (const Arrow& w : c.hom(x, e.tgt)) {
            if (!fs.in_left(w))
                continue;
            auto u = c.lift(w, e);
            if (u)
                return CoveringCone{x, w, *u};
        }
    }
    // Past the enumeration cap the image itself is still a candidate.
    const Arrow id = c.identity(e.tgt);
    if (d.has_unit(e.tgt) && fs.in_left(id))
        if (auto u = c.lift(id, e))
            return CoveringCone{e.tgt, id, *u};
    return std::nullopt;
}

std::optional<Arrow> Auditor::lax_comparison(const Pro& p, const Pro& q, std::string* why)
{
    auto say = [&](std::string s) -> std::optional<Arrow> {
        if (why)
            *why = std::move(s);
        return std::nullopt;
    };
    auto amb = ambient();
    if (!amb.fs)
        return say("no ambient factorization system: " + amb.origin);
    auto pq = d_->hcomp(p, q);
    if (!pq)
        return say("p (x) q is not in the table");
    auto tp = tabulator(p);
    auto tq = tabulator(q);
    auto tpq = tabulator(*pq);
    if (!tp || !tq || !tpq)
        return say("missing tabulator");
    const Category& c = d_->d0();
    auto pb = c.pullback(tp->r, tq->l);
    if (!pb)
        return say("no pullback of the tabulator legs");
    const Arrow& p1 = pb->legs[0];
    const Arrow& p2 = pb->legs[1];
    auto u = c.pair(p.src, q.tgt, c.compose(tp->l, p1), c.compose(tq->r, p2));
    auto mpq = c.pair(p.src, q.tgt, tpq->l, tpq->r);
    if (!u || !mpq)
        return say("no product of the endpoints");
    auto em = amb.fs->factorize(*u);
    if (!em)
        return say("the ambient system does not factor the pullback span");
    auto cone = covering_cone(*d_, *amb.fs, em->e);
    if (!cone)
        return say("no covering cone over the image");
    Arrow x1 = c.compose(p1, cone->lift);
    Arrow x2 = c.compose(p2, cone->lift);
    auto beta = paste_beside(*d_, x1, tp->counit, x2, tq->counit);
    if (!beta)
        return say("cannot paste the tabulator cells");
    auto s = tabulator_factor(*d_, *tpq, *beta);
    if (!s)
        return say("the pasted cell does not factor through the tabulator of p (x) q");
    try {
        return fill_diagonal(c, LiftingSquare{cone->w, *mpq, *s, em->m});
    } catch (const OrthogonalityError& err) {
        return say(err.what());
    }
}

AuditReport Auditor::run()
{
    auto t0 = std::chrono::steady_clock::now();
    AuditReport rep;
    rep.subject = d_->name();
    int wid = 0;
    std::vector<std::string> broken;
    const auto& hyp = characterization_conditions();
    for (const auto& name : audit_conditions()) {
        if (!opt_.only.empty() && std::find(opt_.only.begin(), opt_.only.end(), name) == opt_.only.end())
            continue;
        ConditionResult r;
        if (name == "factorization-system" && !broken.empty()) {
            r.name = name;
            r.verdict = Verdict::skip;
            r.detail = "hypotheses fail: " + join(broken, ", ");
        } else {
            r = run_condition(name);
        }
        if (r.verdict == Verdict::fail && std::find(hyp.begin(), hyp.end(), name) != hyp.end())
            broken.push_back(name);
        if (r.witness)
            r.witness->id = "w" + std::to_string(++wid);
        rep.conditions.push_back(std::move(r));
    }
    auto s = support();
    for (int a : s)
        for (int b : s)
            for (const Arrow& f : d_->d0().hom(a, b)) {
                auto ci = classify(f);
                if (ci.cover)
                    rep.covers.push_back(d_->d0().arrow_name(f));
                if (ci.inclusion)
                    rep.inclusions.push_back(d_->d0().arrow_name(f));
            }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace {

std::vector<Block> make_blocks(Auditor& au, const std::string& name)
{
    const DoubleCategory& d = au.double_category();
    const Category& c = d.d0();
    auto s = au.support();
    std::vector<Block> out;
    auto pros = [&](int a, int b) { return d.proarrows(a, b); };

    if (name == "unit-pure") {
        for (int a : s)
            for (int b : s) {
                auto ya = d.unit(a);
                auto yb = d.unit(b);
                if (!ya || !yb)
                    continue;
                Block bl;
                bl.size = a + b;
                std::vector<Cell> cs;
                auto hom = c.hom(a, b);
                for (const Arrow& f : hom)
                    for (const Arrow& g : hom)
                        for (const Cell& x : d.cells(f, g, *ya, *yb))
                            cs.push_back(x);
                if (cs.empty())
                    continue;
                bl.cells.push_back(std::move(cs));
                out.push_back(std::move(bl));
            }
    } else if (name == "equipment" || name == "kernels" || name == "cover-inclusion" || name == "idempotence" ||
               name == "properness-lemma") {
        for (int a : s)
            for (int b : s) {
                Block bl;
                bl.size = a + b;
                bl.arrows.push_back(c.hom(a, b));
                out.push_back(std::move(bl));
            }
    } else if (name == "cartesian") {
        Block t;
        t.tag = "terminal";
        out.push_back(t);
        for (int a : s)
            for (int b : s) {
                Block bl;
                bl.size = a + b;
                bl.tag = "object-product";
                bl.arrows = {{c.identity(a)}, {c.identity(b)}};
                out.push_back(bl);
                Block tc;
                tc.size = a + b;
                tc.tag = "terminal-cell";
                tc.pros = {pros(a, b)};
                out.push_back(tc);
                Block lp;
                lp.size = 2 * (a + b);
                lp.tag = "local-product";
                lp.pros = {pros(a, b), pros(a, b)};
                out.push_back(lp);
            }
        for (int a : s)
            for (int b : s)
                for (int x : s)
                    for (int y : s) {
                        Block bl;
                        bl.size = a + b + x + y;
                        bl.tag = "product";
                        bl.pros = {pros(a, b), pros(x, y)};
                        out.push_back(bl);
                    }
    } else if (name == "tabulators" || name == "strong-tabulators" || name == "discrete-tabulators" ||
               name == "relations-are-tabulators") {
        for (int a : s)
            for (int b : s) {
                Block bl;
                bl.size = a + b;
                bl.pros = {pros(a, b)};
                out.push_back(bl);
            }
    } else if (name == "functorial-tabulators") {
        for (int a : s)
            for (int b : s)
                for (int x : s) {
                    Block bl;
                    bl.size = a + b + x;
                    bl.pros = {pros(a, b), pros(b, x)};
                    out.push_back(bl);
                }
    } else if (name == "frobenius") {
        for (int a : s)
            for (int b : s)
                for (int x : s) {
                    Block bl;
                    bl.size = a + b + x;
                    bl.arrows = {c.hom(a, b)};
                    bl.pros = {pros(b, x), pros(a, x)};
                    out.push_back(bl);
                }
    } else if (name == "beck-chevalley" || name == "pullbacks-via-tabulators") {
        for (int a : s)
            for (int b : s)
                for (int x : s) {
                    Block bl;
                    bl.size = a + b + x;
                    bl.arrows = {c.hom(a, x), c.hom(b, x)};
                    out.push_back(bl);
                }
    } else if (name == "factorization-system") {
        out.emplace_back();
    } else {
        throw std::invalid_argument("unknown condition: " + name);
    }
    return out;
}

}  // namespace

ConditionResult Auditor::run_condition(const std::string& name)
{
    return run_blocks(
        name, make_blocks(*this, name), opt_, [&](const Instance& x) { return check(name, x); },
        [&](const Instance& x) {
            std::vector<WitnessItem> items;
            if (!x.tag.empty())
                items.push_back({"case", x.tag});
            for (const Arrow& f : x.arrows)
                items.push_back({"arrow", d_->d0().arrow_name(f)});
            for (const Pro& p : x.pros)
                items.push_back({"pro", d_->pro_name(p)});
            for (const Cell& c : x.cells)
                items.push_back({"cell", cell_text(*d_, c)});
            return items;
        });
}

Outcome Auditor::check(const std::string& name, const Instance& x)
{
    try {
        const DoubleCategory& d = *d_;
        const Category& c = d.d0();
        auto an = [&](const Arrow& f) { return c.arrow_name(f); };

        if (name == "unit-pure") {
            const Cell& a = x.cells.at(0);
            auto ya = a.left == a.right ? d.unit_cell(a.left) : std::nullopt;
            if (ya && *ya == a)
                return pass();
            return fail("a cell between units is not the unit cell of an arrow");
        }
        if (name == "equipment") {
            const Arrow& f = x.arrows.at(0);
            if (!d.has_unit(f.src) || !d.has_unit(f.tgt))
                return skip("no unit on an endpoint of " + an(f));
            if (!companion(f))
                return fail(an(f) + " has no companion");
            if (!conjoint(f))
                return fail(an(f) + " has no conjoint");
            return pass();
        }
        if (name == "cartesian") {
            if (x.tag == "terminal") {
                auto t = c.terminal();
                if (!t)
                    return skip("D0 has no terminal object");
                if (!d.has_unit(t->apex))
                    return skip("no unit on the terminal object");
                return pass();
            }
            if (x.tag == "object-product") {
                auto pr = c.product(x.arrows.at(0).src, x.arrows.at(1).src);
                if (!pr)
                    return skip("D0 has no product of the support objects");
                if (!d.has_unit(pr->apex))
                    return skip("no unit on a product object");
                return pass();
            }
            if (x.tag == "terminal-cell") {
                const Pro& p = x.pros.at(0);
                auto t = c.terminal();
                auto y1 = t ? d.unit(t->apex) : std::nullopt;
                if (!y1)
                    return skip("no unit on the terminal object");
                auto ha = c.hom(p.src, t->apex);
                auto hb = c.hom(p.tgt, t->apex);
                if (ha.size() != 1 || hb.size() != 1)
                    return skip("terminal object is not terminal on the support");
                if (d.cells(ha[0], hb[0], p, *y1).size() != 1)
                    return fail("no unique cell into the terminal unit");
                return pass();
            }
            if (x.tag == "local-product") {
                const Pro& m = x.pros.at(0);
                const Pro& n = x.pros.at(1);
                auto hint = d.local_product_hint(m, n);
                std::string why;
                if (hint) {
                    if (!local_product_universal(d, m, n, *hint, &why))
                        return fail("local product is not universal: " + why);
                    return pass();
                }
                auto key = std::make_pair(m, n);
                auto it = cache_->local.find(key);
                if (it == cache_->local.end())
                    it = cache_->local.emplace(key, find_local_product(d, m, n)).first;
                if (!it->second)
                    return skip("no local product of the two proarrows");
                return pass();
            }
            if (x.tag == "product") {
                const Pro& m = x.pros.at(0);
                const Pro& n = x.pros.at(1);
                auto into = [&](const Pro& p) -> const std::vector<Cell>& {
                    auto it = cache_->into.find(p);
                    if (it == cache_->into.end())
                        it = cache_->into.emplace(p, cells_into(d, p)).first;
                    return it->second;
                };
                auto hint = d.cartesian_product_hint(m, n);
                std::string why;
                if (hint) {
                    if (!cartesian_product_universal(d, m, n, *hint, &why, &into(m), &into(n)))
                        return fail("cartesian product is not universal: " + why);
                    return pass();
                }
                if (!find_cartesian_product(d, m, n))
                    return skip("no cartesian product of the two proarrows");
                return pass();
            }
            throw std::invalid_argument("unknown cartesian case: " + x.tag);
        }
        if (name == "tabulators") {
            if (!tabulator(x.pros.at(0)))
                return fail("no tabulator");
            return pass();
        }
        if (name == "strong-tabulators") {
            const Pro& p = x.pros.at(0);
            auto t = tabulator(p);
            if (!t)
                return skip("no tabulator");
            std::string why;
            if (!is_opcartesian(d, t->counit, &why))
                return fail("tabulator cell is not opcartesian: " + why);
            auto lc = conjoint(t->l);
            auto rc = companion(t->r);
            auto h = lc && rc ? d.hcomp(lc->pro, rc->pro) : std::nullopt;
            if (h && !equivalent(d, *h, p))
                return fail("l^* (x) r_! is not isomorphic to the proarrow");
            return pass();
        }
        if (name == "discrete-tabulators") {
            const Pro& p = x.pros.at(0);
            auto t = tabulator(p);
            if (!t)
                return skip("no tabulator");
            auto lr = c.pair(p.src, p.tgt, t->l, t->r);
            if (!lr)
                return skip("no product of the endpoints");
            auto y = d.unit_cell(*lr);
            if (!y)
                return skip("no unit cell on the paired legs");
            std::string why;
            if (!is_cartesian(d, *y, &why))
                return fail("y_<l,r> is not cartesian: " + why);
            auto kl = companion(t->l);
            auto kl2 = conjoint(t->l);
            auto kr = companion(t->r);
            auto kr2 = conjoint(t->r);
            auto ker_l = kl && kl2 ? d.hcomp(kl->pro, kl2->pro) : std::nullopt;
            auto ker_r = kr && kr2 ? d.hcomp(kr->pro, kr2->pro) : std::nullopt;
            auto yt = d.unit(t->apex);
            if (ker_l && ker_r && yt) {
                auto lp = find_local_product(d, *ker_l, *ker_r);
                if (lp && !equivalent(d, lp->pro, *yt))
                    return fail("ker(l) meet ker(r) is not the unit of the apex");
            }
            return pass();
        }
        if (name == "relations-are-tabulators") {
            const Pro& p = x.pros.at(0);
            auto t = tabulator(p);
            if (!t)
                return skip("no tabulator");
            auto lr = c.pair(p.src, p.tgt, t->l, t->r);
            if (!lr)
                return skip("no product of the endpoints");
            if (!classify(*lr).inclusion)
                return fail("the tabulator legs are not jointly an inclusion");
            auto yt = d.unit(t->apex);
            if (!yt)
                return skip("no unit on the apex");
            auto ext = find_extension(d, t->l, *yt, t->r);
            if (!ext)
                return skip("no extension of the apex unit along the legs");
            std::string why;
            if (!tabulator_universal(d, ext->pro, TabulatorData{t->apex, t->l, t->r, ext->cell}, &why))
                return fail("the apex does not tabulate the extension along its legs: " + why);
            auto comp = companion(*lr);
            auto conj = conjoint(*lr);
            auto ck = comp && conj ? d.hcomp(conj->pro, comp->pro) : std::nullopt;
            auto cone = cokernel_cone(*lr);
            if (ck && cone &&
                !tabulator_universal(d, *ck, TabulatorData{t->apex, *lr, *lr, *cone}, &why))
                return fail("the apex does not tabulate the cokernel of <l,r>: " + why);
            return pass();
        }
        if (name == "functorial-tabulators") {
            const Pro& p = x.pros.at(0);
            const Pro& q = x.pros.at(1);
            if (!d.hcomp(p, q))
                return skip("p (x) q is not in the table");
            auto amb = ambient();
            if (!amb.fs)
                return skip("no ambient factorization system: " + amb.origin);
            std::string why;
            auto g = lax_comparison(p, q, &why);
            if (!g)
                return fail("no comparison into the tabulator of the composite: " + why);
            if (!inverse(c, *g))
                return fail("the comparison " + an(*g) + " is not invertible");
            return pass();
        }
        if (name == "frobenius") {
            const Arrow& f = x.arrows.at(0);
            const Pro& r = x.pros.at(0);
            const Pro& s = x.pros.at(1);
            auto fc = companion(f);
            auto fj = conjoint(f);
            if (!fc || !fj)
                return skip("no companion or conjoint");
            auto fs = d.hcomp(fj->pro, s);
            auto fr = d.hcomp(fc->pro, r);
            if (!fs || !fr)
                return skip("a composite is not in the table");
            auto lhs = find_local_product(d, r, *fs);
            auto inner = find_local_product(d, *fr, s);
            if (!lhs || !inner)
                return skip("a meet is not in the table");
            auto rhs = d.hcomp(fj->pro, inner->pro);
            if (!rhs)
                return skip("a composite is not in the table");
            if (!equivalent(d, lhs->pro, *rhs))
                return fail("lhs " + d.pro_name(lhs->pro) + " rhs " + d.pro_name(*rhs));
            return pass();
        }
        if (name == "beck-chevalley") {
            const Arrow& f = x.arrows.at(0);
            const Arrow& g = x.arrows.at(1);
            auto pb = c.pullback(f, g);
            if (!pb)
                return pass();  // no square to check
            auto cell = beck_chevalley_cell(f, g, pb->legs[0], pb->legs[1]);
            if (!cell)
                return skip("missing companions or conjoints for the square");
            if (!is_invertible(d, *cell))
                return fail("the Beck-Chevalley cell is not invertible");
            return pass();
        }
        if (name == "kernels") {
            const Arrow& f = x.arrows.at(0);
            auto fc = companion(f);
            auto fj = conjoint(f);
            auto ya = d.unit(f.src);
            auto yb = d.unit(f.tgt);
            if (!fc || !fj || !ya || !yb)
                return skip("no companion, conjoint or unit");
            auto k = d.hcomp(fc->pro, fj->pro);
            auto ck = d.hcomp(fj->pro, fc->pro);
            bool decided = false;
            if (k) {
                auto res = find_restriction(d, f, *yb, f);
                if (res) {
                    decided = true;
                    if (!equivalent(d, *k, res->pro))
                        return fail("the kernel is not the restriction of y_B along (f, f)");
                }
            }
            if (ck) {
                auto ext = find_extension(d, f, *ya, f);
                if (ext) {
                    decided = true;
                    if (!equivalent(d, *ck, ext->pro))
                        return fail("the cokernel is not the extension of y_A along (f, f)");
                }
            }
            return decided ? pass() : skip("kernel and cokernel are not in the table");
        }
        if (name == "cover-inclusion") {
            const Arrow& f = x.arrows.at(0);
            auto ci = classify(f);
            if (!ci.cover_by_cell && !ci.inclusion_by_cell)
                return skip("no canonical cells for " + an(f));
            auto yf = d.unit_cell(f);
            if (!yf)
                return skip("no unit cell");
            if (ci.cover_by_cell && ci.cover != is_opcartesian(d, *yf))
                return fail("the cokernel cell and y_f disagree on whether " + an(f) + " is a cover");
            if (ci.inclusion_by_cell && ci.inclusion != is_cartesian(d, *yf))
                return fail("the kernel cell and y_f disagree on whether " + an(f) + " is an inclusion");
            return pass();
        }
        if (name == "idempotence") {
            const Arrow& p = x.arrows.at(0);
            auto pc = companion(p);
            if (!pc)
                return skip("no companion");
            auto prod = d.cartesian_product_hint(pc->pro, pc->pro);
            if (!prod)
                prod = find_cartesian_product(d, pc->pro, pc->pro);
            auto da = c.pair(p.src, p.src, c.identity(p.src), c.identity(p.src));
            auto db = c.pair(p.tgt, p.tgt, c.identity(p.tgt), c.identity(p.tgt));
            if (!prod || !da || !db)
                return skip("no product");
            auto res = find_restriction(d, *da, prod->pro, *db);
            if (!res)
                return skip("no restriction along the diagonals");
            if (!equivalent(d, res->pro, pc->pro))
                return fail("the restriction of p_! x p_! along the diagonals is not p_!");
            return pass();
        }
        if (name == "properness-lemma") {
            const Arrow& f = x.arrows.at(0);
            auto ci = classify(f);
            auto sc = support_category();
            const Category& cat = sc ? *sc : c;
            if (ci.cover && !is_epi(cat, f))
                return fail("the cover " + an(f) + " is not epi");
            if (ci.inclusion && !is_mono(cat, f))
                return fail("the inclusion " + an(f) + " is not mono");
            return pass();
        }
        if (name == "pullbacks-via-tabulators") {
            auto cone = pullback_via_tabulator(d, x.arrows.at(0), x.arrows.at(1));
            if (!cone)
                return skip("no tabulator of h_! (x) e^*");
            auto err = verify_limit(c, *cone);
            if (!err.empty())
                return fail("the tabulator is not a pullback: " + err);
            return pass();
        }
        if (name == "factorization-system") {
            auto dfs = derive();
            if (!dfs.error.empty())
                return fail(dfs.error);
            for (const FsClause* cl : dfs.report.clauses()) {
                if (cl->verdict != Verdict::fail)
                    continue;
                std::string note = cl->name + " fails";
                if (!cl->witnesses.empty()) {
                    std::vector<std::string> names;
                    for (const Arrow& f : cl->witnesses.front())
                        names.push_back(dfs.category->arrow_name(f));
                    note += " at " + join(names, " ");
                }
                return fail(note);
            }
            return pass();
        }
        throw std::invalid_argument("unknown condition: " + name);
    } catch (const UniverseError& e) {
        return skip(std::string("outside the finite universe: ") + e.what());
    } catch (const BoundaryError& e) {
        return fail(std::string("table error: ") + e.what());
    } catch (const UnknownIdError& e) {
        return fail(std::string("table error: ") + e.what());
    }
}

bool Auditor::replay(const Witness& w, std::string* why)
{
    auto say = [&](std::string s) {
        if (why)
            *why = std::move(s);
        return false;
    };
    const auto& names = audit_conditions();
    if (std::find(names.begin(), names.end(), w.condition) == names.end())
        return say("unknown condition " + w.condition);
    const DoubleCategory& d = *d_;
    const Category& c = d.d0();
    Instance x;
    for (const auto& item : w.items) {
        if (item.kind == "case") {
            x.tag = item.text;
        } else if (item.kind == "arrow") {
            auto f = c.parse_arrow(item.text);
            if (!f)
                return say("unknown arrow " + item.text);
            x.arrows.push_back(*f);
        } else if (item.kind == "pro") {
            auto p = d.parse_pro(item.text);
            if (!p)
                return say("unknown proarrow " + item.text);
            x.pros.push_back(*p);
        } else if (item.kind == "cell") {
            auto cl = parse_cell_text(d, item.text);
            if (!cl)
                return say("unknown cell " + item.text);
            x.cells.push_back(*cl);
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

AuditReport audit(const DoubleCategory& d, const AuditOptions& opt)
{
    Auditor a(d, opt);
    return a.run();
}

CoverInclusion classify_cover_inclusion(const DoubleCategory& d, const Arrow& f)
{
    Auditor a(d);
    return a.classify(f);
}

DerivedFS derive_factorization_system(const DoubleCategory& d, const AuditOptions& opt)
{
    Auditor a(d, opt);
    return a.derive();
}

std::optional<LimitCone> pullback_via_tabulator(const DoubleCategory& d, const Arrow& h, const Arrow& e)
{
    if (h.tgt != e.tgt)
        throw BoundaryError("pullback_via_tabulator needs a cospan");
    auto hc = find_companion(d, h);
    auto ej = find_conjoint(d, e);
    if (!hc || !ej)
        return std::nullopt;
    auto p = d.hcomp(hc->pro, ej->pro);
    if (!p)
        return std::nullopt;
    auto t = find_tabulator(d, *p);
    if (!t)
        return std::nullopt;
    LimitCone cone;
    cone.apex = t->apex;
    cone.legs = {t->l, t->r};
    cone.diagram.shape = LimitShape::pullback;
    cone.diagram.f = h;
    cone.diagram.g = e;
    return cone;
}

}  // namespace relcheck
