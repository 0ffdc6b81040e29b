#include "relcheck/double_ops.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace relcheck {

namespace {

void explain(std::string* why, const std::string& text)
{
    if (why)
        *why = text;
}

std::string boundary(const DoubleCategory& d, const Cell& c)
{
    const Category& c0 = d.d0();
    return "(" + c0.arrow_name(c.left) + ", " + c0.arrow_name(c.right) + "; " + d.pro_name(c.top) + " => " +
           d.pro_name(c.bottom) + ")";
}

// Proarrows to probe a universal property with when the endpoints are
// outside the window: the data itself and the unit.
std::vector<Pro> probes(const DoubleCategory& d, int a, int b, std::initializer_list<Pro> extra)
{
    const auto w = d.window();
    const bool inside = std::find(w.begin(), w.end(), a) != w.end() && std::find(w.begin(), w.end(), b) != w.end();
    if (inside)
        return d.proarrows(a, b);
    std::vector<Pro> out(extra);
    if (a == b)
        if (auto y = d.unit(a))
            out.push_back(*y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

bool is_globular(const DoubleCategory& d, const Cell& c)
{
    return d.d0().is_identity(c.left) && d.d0().is_identity(c.right);
}

bool is_identity_cell(const DoubleCategory& d, const Cell& c)
{
    return c.top == c.bottom && c == d.identity_cell(c.top);
}

std::optional<Cell> cell_inverse(const DoubleCategory& d, const Cell& c)
{
    if (!is_globular(d, c))
        return std::nullopt;
    const Cell id_top = d.identity_cell(c.top);
    const Cell id_bottom = d.identity_cell(c.bottom);
    for (const Cell& inv : d.cells(d.d0().identity(c.bottom.src), d.d0().identity(c.bottom.tgt), c.bottom, c.top))
        if (d.vcomp(c, inv) == id_top && d.vcomp(inv, c) == id_bottom)
            return inv;
    return std::nullopt;
}

bool is_invertible(const DoubleCategory& d, const Cell& c)
{
    return cell_inverse(d, c).has_value();
}

std::optional<Cell> globular_iso(const DoubleCategory& d, const Pro& p, const Pro& q)
{
    if (p.src != q.src || p.tgt != q.tgt)
        return std::nullopt;
    const Category& c = d.d0();
    for (const Cell& x : d.cells(c.identity(p.src), c.identity(p.tgt), p, q))
        if (is_invertible(d, x))
            return x;
    return std::nullopt;
}

bool equivalent(const DoubleCategory& d, const Pro& p, const Pro& q)
{
    return globular_iso(d, p, q).has_value();
}

std::optional<Cell> unique_globular(const DoubleCategory& d, const Pro& p, const Pro& q)
{
    if (p.src != q.src || p.tgt != q.tgt)
        return std::nullopt;
    auto cs = d.cells(d.d0().identity(p.src), d.d0().identity(p.tgt), p, q);
    if (cs.size() != 1)
        return std::nullopt;
    return cs.front();
}

namespace {

// Window endpoint pairs, the pair (a, b) first: most failures show up there.
std::vector<std::pair<int, int>> scan_order(const DoubleCategory& d, int a, int b)
{
    const auto w = d.window();
    std::vector<std::pair<int, int>> out;
    if (std::find(w.begin(), w.end(), a) != w.end() && std::find(w.begin(), w.end(), b) != w.end())
        out.emplace_back(a, b);
    for (int x : w)
        for (int y : w)
            if (x != a || y != b)
                out.emplace_back(x, y);
    return out;
}

// vcomp against alpha must be a bijection from gammas onto betas. Both sides
// share a boundary, so injectivity plus equal counts suffices.
bool bijective(const DoubleCategory& d, const std::vector<Cell>& gammas, const std::vector<Cell>& betas,
               const Cell& alpha, bool alpha_below, const Cell** bad)
{
    std::map<Cell, int> hits;
    for (const Cell& g : gammas)
        ++hits[alpha_below ? d.vcomp(g, alpha) : d.vcomp(alpha, g)];
    if (hits.size() == gammas.size() && gammas.size() == betas.size())
        return true;
    for (const Cell& b : betas) {
        auto it = hits.find(b);
        if (it == hits.end() || it->second != 1) {
            *bad = &b;
            return false;
        }
    }
    *bad = nullptr;
    return false;
}

}  // namespace

bool is_cartesian(const DoubleCategory& d, const Cell& alpha, std::string* why)
{
    const Category& c = d.d0();
    const Pro& m = alpha.top;
    const Pro& n = alpha.bottom;
    for (auto [a2, b2] : scan_order(d, m.src, m.tgt)) {
        const auto ps = d.proarrows(a2, b2);
        if (ps.empty())
            continue;
        const auto hs = c.hom(a2, m.src);
        const auto ks = c.hom(b2, m.tgt);
        for (const Arrow& h : hs)
            for (const Arrow& k : ks) {
                const Arrow fh = c.compose(alpha.left, h);
                const Arrow gk = c.compose(alpha.right, k);
                for (const Pro& p : ps) {
                    const auto betas = d.cells(fh, gk, p, n);
                    const auto gammas = d.cells(h, k, p, m);
                    if (betas.empty() && gammas.empty())
                        continue;
                    const Cell* bad = nullptr;
                    if (!bijective(d, gammas, betas, alpha, true, &bad)) {
                        std::ostringstream os;
                        if (bad)
                            os << "cell " << boundary(d, *bad) << " does not factor uniquely along ("
                               << c.arrow_name(h) << ", " << c.arrow_name(k) << ")";
                        else
                            os << "two cells " << d.pro_name(p) << " => " << d.pro_name(m) << " along ("
                               << c.arrow_name(h) << ", " << c.arrow_name(k) << ") paste to the same cell";
                        explain(why, os.str());
                        return false;
                    }
                }
            }
    }
    return true;
}

bool is_opcartesian(const DoubleCategory& d, const Cell& alpha, std::string* why)
{
    const Category& c = d.d0();
    const Pro& m = alpha.bottom;
    for (auto [x2, y2] : scan_order(d, m.src, m.tgt)) {
        const auto ns = d.proarrows(x2, y2);
        if (ns.empty())
            continue;
        const auto hs = c.hom(m.src, x2);
        const auto ks = c.hom(m.tgt, y2);
        for (const Arrow& h : hs)
            for (const Arrow& k : ks) {
                const Arrow hf = c.compose(h, alpha.left);
                const Arrow kg = c.compose(k, alpha.right);
                for (const Pro& n : ns) {
                    const auto betas = d.cells(hf, kg, alpha.top, n);
                    const auto gammas = d.cells(h, k, m, n);
                    if (betas.empty() && gammas.empty())
                        continue;
                    const Cell* bad = nullptr;
                    if (!bijective(d, gammas, betas, alpha, false, &bad)) {
                        std::ostringstream os;
                        if (bad)
                            os << "cell " << boundary(d, *bad) << " does not factor uniquely along ("
                               << c.arrow_name(h) << ", " << c.arrow_name(k) << ")";
                        else
                            os << "two cells " << d.pro_name(m) << " => " << d.pro_name(n) << " along ("
                               << c.arrow_name(h) << ", " << c.arrow_name(k) << ") paste to the same cell";
                        explain(why, os.str());
                        return false;
                    }
                }
            }
    }
    return true;
}

std::optional<Cell> factor_opcartesian(const DoubleCategory& d, const Cell& alpha, const Cell& beta, const Arrow& h,
                                       const Arrow& k)
{
    for (const Cell& g : d.cells(h, k, alpha.bottom, beta.bottom))
        if (d.vcomp(alpha, g) == beta)
            return g;
    return std::nullopt;
}

std::optional<Cell> factor_cartesian(const DoubleCategory& d, const Cell& alpha, const Cell& beta, const Arrow& h,
                                     const Arrow& k)
{
    for (const Cell& g : d.cells(h, k, beta.top, alpha.top))
        if (d.vcomp(g, alpha) == beta)
            return g;
    return std::nullopt;
}

bool companion_equations(const DoubleCategory& d, const Arrow& f, const CompanionData& x, std::string* why)
{
    const Category& c = d.d0();
    auto ya = d.unit(f.src);
    auto yb = d.unit(f.tgt);
    const Arrow ia = c.identity(f.src);
    const Arrow ib = c.identity(f.tgt);
    if (!ya || !yb) {
        explain(why, "missing unit");
        return false;
    }
    if (x.pro.src != f.src || x.pro.tgt != f.tgt || x.unit.left != ia || x.unit.right != f || x.unit.top != *ya ||
        x.unit.bottom != x.pro || x.counit.left != f || x.counit.right != ib || x.counit.top != x.pro ||
        x.counit.bottom != *yb) {
        explain(why, "unit or counit has the wrong boundary");
        return false;
    }
    if (d.vcomp(x.unit, x.counit) != d.unit_cell(f)) {
        explain(why, "unit then counit is not y_f");
        return false;
    }
    auto lam = d.left_unitor(x.pro);
    auto rho = d.right_unitor(x.pro);
    auto h = d.hcomp(x.unit, x.counit);
    if (!lam || !rho || !h) {
        explain(why, "unitors or horizontal composite missing");
        return false;
    }
    auto lam_inv = cell_inverse(d, *lam);
    if (!lam_inv) {
        explain(why, "left unitor not invertible");
        return false;
    }
    if (d.vcomp(d.vcomp(*lam_inv, *h), *rho) != d.identity_cell(x.pro)) {
        explain(why, "unit beside counit is not the identity");
        return false;
    }
    return true;
}

bool conjoint_equations(const DoubleCategory& d, const Arrow& f, const CompanionData& x, std::string* why)
{
    const Category& c = d.d0();
    auto ya = d.unit(f.src);
    auto yb = d.unit(f.tgt);
    const Arrow ia = c.identity(f.src);
    const Arrow ib = c.identity(f.tgt);
    if (!ya || !yb) {
        explain(why, "missing unit");
        return false;
    }
    if (x.pro.src != f.tgt || x.pro.tgt != f.src || x.unit.left != f || x.unit.right != ia || x.unit.top != *ya ||
        x.unit.bottom != x.pro || x.counit.left != ib || x.counit.right != f || x.counit.top != x.pro ||
        x.counit.bottom != *yb) {
        explain(why, "unit or counit has the wrong boundary");
        return false;
    }
    if (d.vcomp(x.unit, x.counit) != d.unit_cell(f)) {
        explain(why, "unit then counit is not y_f");
        return false;
    }
    auto lam = d.left_unitor(x.pro);
    auto rho = d.right_unitor(x.pro);
    auto h = d.hcomp(x.counit, x.unit);
    if (!lam || !rho || !h) {
        explain(why, "unitors or horizontal composite missing");
        return false;
    }
    auto rho_inv = cell_inverse(d, *rho);
    if (!rho_inv) {
        explain(why, "right unitor not invertible");
        return false;
    }
    if (d.vcomp(d.vcomp(*rho_inv, *h), *lam) != d.identity_cell(x.pro)) {
        explain(why, "counit beside unit is not the identity");
        return false;
    }
    return true;
}

std::optional<CompanionData> find_companion(const DoubleCategory& d, const Arrow& f)
{
    if (auto h = d.companion_hint(f); h && companion_equations(d, f, *h))
        return h;
    const Category& c = d.d0();
    auto ya = d.unit(f.src);
    auto yb = d.unit(f.tgt);
    if (!ya || !yb)
        return std::nullopt;
    for (const Pro& p : d.proarrows(f.src, f.tgt))
        for (const Cell& u : d.cells(c.identity(f.src), f, *ya, p))
            for (const Cell& e : d.cells(f, c.identity(f.tgt), p, *yb)) {
                CompanionData x{p, u, e};
                if (companion_equations(d, f, x))
                    return x;
            }
    return std::nullopt;
}

std::optional<CompanionData> find_conjoint(const DoubleCategory& d, const Arrow& f)
{
    if (auto h = d.conjoint_hint(f); h && conjoint_equations(d, f, *h))
        return h;
    const Category& c = d.d0();
    auto ya = d.unit(f.src);
    auto yb = d.unit(f.tgt);
    if (!ya || !yb)
        return std::nullopt;
    for (const Pro& p : d.proarrows(f.tgt, f.src))
        for (const Cell& u : d.cells(f, c.identity(f.src), *ya, p))
            for (const Cell& e : d.cells(c.identity(f.tgt), f, p, *yb)) {
                CompanionData x{p, u, e};
                if (conjoint_equations(d, f, x))
                    return x;
            }
    return std::nullopt;
}

std::optional<CartesianCellData> find_restriction(const DoubleCategory& d, const Arrow& f, const Pro& n,
                                                  const Arrow& g)
{
    if (auto h = d.restriction_hint(f, n, g); h && h->cell.left == f && h->cell.right == g &&
                                              h->cell.bottom == n && h->cell.top == h->pro &&
                                              is_cartesian(d, h->cell))
        return h;
    for (const Pro& q : d.proarrows(f.src, g.src))
        for (const Cell& x : d.cells(f, g, q, n))
            if (is_cartesian(d, x))
                return CartesianCellData{q, x};
    return std::nullopt;
}

std::optional<CartesianCellData> find_extension(const DoubleCategory& d, const Arrow& f, const Pro& m,
                                                const Arrow& g)
{
    if (auto h = d.extension_hint(f, m, g); h && h->cell.left == f && h->cell.right == g && h->cell.top == m &&
                                            h->cell.bottom == h->pro && is_opcartesian(d, h->cell))
        return h;
    for (const Pro& q : d.proarrows(f.tgt, g.tgt))
        for (const Cell& x : d.cells(f, g, m, q))
            if (is_opcartesian(d, x))
                return CartesianCellData{q, x};
    return std::nullopt;
}

bool tabulator_universal(const DoubleCategory& d, const Pro& p, const TabulatorData& t, std::string* why)
{
    const Category& c = d.d0();
    auto yt = d.unit(t.apex);
    if (!yt || t.counit.top != *yt || t.counit.bottom != p || t.counit.left != t.l || t.counit.right != t.r) {
        explain(why, "counit has the wrong boundary");
        return false;
    }
    for (int x : d.window()) {
        auto yx = d.unit(x);
        if (!yx)
            continue;
        std::set<Cell> expected;
        for (const Arrow& h : c.hom(x, p.src))
            for (const Arrow& k : c.hom(x, p.tgt))
                for (const Cell& b : d.cells(h, k, *yx, p))
                    expected.insert(b);
        std::set<Cell> got;
        for (const Arrow& u : c.hom(x, t.apex)) {
            auto yu = d.unit_cell(u);
            if (!yu) {
                explain(why, "missing unit cell");
                return false;
            }
            if (!got.insert(d.vcomp(*yu, t.counit)).second) {
                explain(why, "two arrows " + c.object_name(x) + " -> " + c.object_name(t.apex) +
                                 " induce the same cell");
                return false;
            }
        }
        if (got != expected) {
            std::ostringstream os;
            os << "object " << c.object_name(x) << ": " << expected.size() << " cells into the proarrow but "
               << got.size() << " arrows into the apex";
            explain(why, os.str());
            return false;
        }
    }
    return true;
}

std::optional<TabulatorData> find_tabulator(const DoubleCategory& d, const Pro& p)
{
    if (auto h = d.tabulator_hint(p); h && tabulator_universal(d, p, *h))
        return h;
    const Category& c = d.d0();
    for (int t : d.window()) {
        auto yt = d.unit(t);
        if (!yt)
            continue;
        for (const Arrow& l : c.hom(t, p.src))
            for (const Arrow& r : c.hom(t, p.tgt))
                for (const Cell& tau : d.cells(l, r, *yt, p)) {
                    TabulatorData x{t, l, r, tau};
                    if (tabulator_universal(d, p, x))
                        return x;
                }
    }
    return std::nullopt;
}

std::optional<Arrow> tabulator_factor(const DoubleCategory& d, const TabulatorData& t, const Cell& beta)
{
    for (const Arrow& u : d.d0().hom(beta.top.src, t.apex)) {
        auto yu = d.unit_cell(u);
        if (yu && yu->top == beta.top && d.vcomp(*yu, t.counit) == beta)
            return u;
    }
    return std::nullopt;
}

bool local_product_universal(const DoubleCategory& d, const Pro& m, const Pro& n, const ProductData& q,
                             std::string* why)
{
    const Category& c = d.d0();
    const Arrow ia = c.identity(m.src);
    const Arrow ib = c.identity(m.tgt);
    if (!is_globular(d, q.first) || !is_globular(d, q.second) || q.first.top != q.pro || q.second.top != q.pro ||
        q.first.bottom != m || q.second.bottom != n) {
        explain(why, "projections have the wrong boundary");
        return false;
    }
    for (const Pro& s : probes(d, m.src, m.tgt, {m, n, q.pro})) {
        const auto s1 = d.cells(ia, ib, s, m);
        const auto s2 = d.cells(ia, ib, s, n);
        const auto gammas = d.cells(ia, ib, s, q.pro);
        std::set<std::pair<Cell, Cell>> images;
        for (const Cell& g : gammas)
            images.emplace(d.vcomp(g, q.first), d.vcomp(g, q.second));
        if (images.size() != gammas.size() || gammas.size() != s1.size() * s2.size()) {
            explain(why, "globular cells out of " + d.pro_name(s) + " do not factor uniquely");
            return false;
        }
    }
    return true;
}

std::optional<ProductData> find_local_product(const DoubleCategory& d, const Pro& m, const Pro& n)
{
    if (auto h = d.local_product_hint(m, n); h && local_product_universal(d, m, n, *h))
        return h;
    const Category& c = d.d0();
    const Arrow ia = c.identity(m.src);
    const Arrow ib = c.identity(m.tgt);
    for (const Pro& q : d.proarrows(m.src, m.tgt))
        for (const Cell& p1 : d.cells(ia, ib, q, m))
            for (const Cell& p2 : d.cells(ia, ib, q, n)) {
                ProductData x{q, p1, p2};
                if (local_product_universal(d, m, n, x))
                    return x;
            }
    return std::nullopt;
}

std::vector<Cell> cells_into(const DoubleCategory& d, const Pro& m)
{
    const Category& c = d.d0();
    std::vector<Cell> out;
    const auto w = d.window();
    for (int x : w)
        for (int y : w) {
            const auto ps = d.proarrows(x, y);
            if (ps.empty())
                continue;
            const auto fs = c.hom(x, m.src);
            const auto gs = c.hom(y, m.tgt);
            for (const Pro& p : ps)
                for (const Arrow& f : fs)
                    for (const Arrow& g : gs)
                        for (const Cell& a : d.cells(f, g, p, m))
                            out.push_back(a);
        }
    return out;
}

namespace {

// Cells s => q.pro must correspond one to one with pairs of cells s => m,
// s => n. The counts depend only on q.pro; with `inject` the pairing through
// the projections is checked as well.
bool product_cells_factor(const DoubleCategory& d, const ProductData& q, const std::vector<Cell>& into_m,
                          const std::vector<Cell>& into_n, std::string* why, bool inject)
{
    const Category& c = d.d0();
    std::map<Pro, std::size_t> count_m, count_n;
    for (const Cell& a : into_m)
        ++count_m[a.top];
    for (const Cell& b : into_n)
        ++count_n[b.top];
    for (const auto& [s, k] : count_m) {
        auto it = count_n.find(s);
        if (it == count_n.end())
            continue;
        const std::size_t want = k * it->second;
        std::set<std::pair<Cell, Cell>> images;
        std::size_t have = 0;
        for (const Arrow& l : c.hom(s.src, q.pro.src)) {
            for (const Arrow& r : c.hom(s.tgt, q.pro.tgt)) {
                for (const Cell& g : d.cells(l, r, s, q.pro)) {
                    if (++have > want)
                        break;
                    if (inject)
                        images.emplace(d.vcomp(g, q.first), d.vcomp(g, q.second));
                }
                if (have > want)
                    break;
            }
            if (have > want)
                break;
        }
        if (have != want || (inject && images.size() != want)) {
            explain(why, "pairs of cells out of " + d.pro_name(s) + " do not factor uniquely");
            return false;
        }
    }
    return true;
}

}  // namespace

bool cartesian_product_universal(const DoubleCategory& d, const Pro& m, const Pro& n, const ProductData& q,
                                 std::string* why, const std::vector<Cell>* into_m, const std::vector<Cell>* into_n)
{
    const Category& c = d.d0();
    auto ac = c.product(m.src, n.src);
    auto bd = c.product(m.tgt, n.tgt);
    if (!ac || !bd || q.pro.src != ac->apex || q.pro.tgt != bd->apex || q.first.top != q.pro ||
        q.second.top != q.pro || q.first.bottom != m || q.second.bottom != n || q.first.left != ac->legs[0] ||
        q.first.right != bd->legs[0] || q.second.left != ac->legs[1] || q.second.right != bd->legs[1]) {
        explain(why, "projections have the wrong boundary");
        return false;
    }
    std::vector<Cell> local_m, local_n;
    if (!into_m) {
        local_m = cells_into(d, m);
        into_m = &local_m;
    }
    if (!into_n) {
        local_n = cells_into(d, n);
        into_n = &local_n;
    }
    return product_cells_factor(d, q, *into_m, *into_n, why, true);
}

std::optional<ProductData> find_cartesian_product(const DoubleCategory& d, const Pro& m, const Pro& n)
{
    const auto into_m = cells_into(d, m);
    const auto into_n = cells_into(d, n);
    if (auto h = d.cartesian_product_hint(m, n);
        h && cartesian_product_universal(d, m, n, *h, nullptr, &into_m, &into_n))
        return h;
    const Category& c = d.d0();
    auto ac = c.product(m.src, n.src);
    auto bd = c.product(m.tgt, n.tgt);
    if (!ac || !bd)
        return std::nullopt;
    for (const Pro& q : d.proarrows(ac->apex, bd->apex)) {
        if (!product_cells_factor(d, ProductData{q, {}, {}}, into_m, into_n, nullptr, false))
            continue;
        for (const Cell& p1 : d.cells(ac->legs[0], bd->legs[0], q, m))
            for (const Cell& p2 : d.cells(ac->legs[1], bd->legs[1], q, n)) {
                ProductData x{q, p1, p2};
                if (cartesian_product_universal(d, m, n, x, nullptr, &into_m, &into_n))
                    return x;
            }
    }
    return std::nullopt;
}

std::optional<Pro> kernel(const DoubleCategory& d, const Arrow& f)
{
    auto a = find_companion(d, f);
    auto b = find_conjoint(d, f);
    if (!a || !b)
        return std::nullopt;
    return d.hcomp(a->pro, b->pro);
}

std::optional<Pro> cokernel(const DoubleCategory& d, const Arrow& f)
{
    auto a = find_companion(d, f);
    auto b = find_conjoint(d, f);
    if (!a || !b)
        return std::nullopt;
    return d.hcomp(b->pro, a->pro);
}

std::optional<Cell> paste_beside(const DoubleCategory& d, const Arrow& x1, const Cell& a, const Arrow& x2,
                                 const Cell& b)
{
    if (x1.src != x2.src)
        throw BoundaryError("paste_beside needs arrows out of one object");
    auto y = d.unit(x1.src);
    auto y1 = d.unit_cell(x1);
    auto y2 = d.unit_cell(x2);
    if (!y || !y1 || !y2)
        return std::nullopt;
    auto lam = d.left_unitor(*y);
    if (!lam)
        return std::nullopt;
    auto lam_inv = cell_inverse(d, *lam);
    if (!lam_inv)
        return std::nullopt;
    auto side = d.hcomp(d.vcomp(*y1, a), d.vcomp(*y2, b));
    if (!side)
        return std::nullopt;
    return d.vcomp(*lam_inv, *side);
}

std::optional<Pro> hcomp_chain(const DoubleCategory& d, const std::vector<Pro>& ps)
{
    if (ps.empty())
        return std::nullopt;
    std::optional<Pro> acc = ps.front();
    for (std::size_t i = 1; i < ps.size() && acc; ++i)
        acc = d.hcomp(*acc, ps[i]);
    return acc;
}

}  // namespace relcheck
