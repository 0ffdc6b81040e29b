#include "relcheck/table_double.hpp"

#include "relcheck/finite_category.hpp"
#include "relcheck/finset.hpp"
#include "relcheck/limits.hpp"

#include <algorithm>
#include <sstream>

namespace relcheck {

namespace {

using Boundary = std::tuple<Arrow, Arrow, int, int>;

// x : from.apex -> to.apex, invertible, with to.l x == from.l and
// to.r x == from.r.
std::optional<Arrow> span_iso(const Category& c, const Span& from, const Span& to)
{
    if (from.l.tgt != to.l.tgt || from.r.tgt != to.r.tgt)
        return std::nullopt;
    if (dynamic_cast<const FinSetCategory*>(&c)) {
        if (from.apex != to.apex)
            return std::nullopt;
        // Match the k-th occurrence of each pair in `from` with the k-th in `to`.
        std::vector<int> table(static_cast<std::size_t>(from.apex));
        std::vector<bool> used(static_cast<std::size_t>(to.apex), false);
        for (int k = 0; k < from.apex; ++k) {
            int hit = -1;
            for (int j = 0; j < to.apex && hit < 0; ++j)
                if (!used[j] && apply(to.l, j) == apply(from.l, k) && apply(to.r, j) == apply(from.r, k))
                    hit = j;
            if (hit < 0)
                return std::nullopt;
            used[hit] = true;
            table[k] = hit;
        }
        return make_function(from.apex, to.apex, table);
    }
    for (const Arrow& x : c.hom(from.apex, to.apex))
        if (c.compose(to.l, x) == from.l && c.compose(to.r, x) == from.r && inverse(c, x))
            return x;
    return std::nullopt;
}

// Every x : top.apex -> bottom.apex with bottom.l x == h1 and bottom.r x == h2.
std::vector<Arrow> mediators(const Category& c, const Span& top, const Span& bottom, const Arrow& h1,
                             const Arrow& h2)
{
    std::vector<Arrow> out;
    if (dynamic_cast<const FinSetCategory*>(&c)) {
        const int n = top.apex;
        std::vector<std::vector<int>> options(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            for (int j = 0; j < bottom.apex; ++j)
                if (apply(bottom.l, j) == apply(h1, k) && apply(bottom.r, j) == apply(h2, k))
                    options[k].push_back(j);
            if (options[k].empty())
                return out;
        }
        // Odometer in lexicographic order of tables.
        std::vector<std::size_t> at(static_cast<std::size_t>(n), 0);
        std::vector<int> table(static_cast<std::size_t>(n));
        while (true) {
            for (int k = 0; k < n; ++k)
                table[k] = options[k][at[k]];
            out.push_back(make_function(n, bottom.apex, table));
            int k = n - 1;
            while (k >= 0 && ++at[k] == options[k].size()) {
                at[k] = 0;
                --k;
            }
            if (k < 0)
                break;
        }
        return out;
    }
    for (const Arrow& x : c.hom(top.apex, bottom.apex))
        if (c.compose(bottom.l, x) == h1 && c.compose(bottom.r, x) == h2)
            out.push_back(x);
    return out;
}

}  // namespace

TableDouble::TableDouble(Mode mode, std::shared_ptr<const Category> d0, std::string d0_spec)
    : mode_(mode), d0_(std::move(d0)), d0_spec_(std::move(d0_spec))
{
}

void TableDouble::check_mode(Mode m, const char* what) const
{
    if (mode_ != m)
        throw std::logic_error(std::string(what) + " is not available in this table mode");
}

void TableDouble::set_support(std::vector<int> objects)
{
    std::sort(objects.begin(), objects.end());
    objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
    support_ = std::move(objects);
}

int TableDouble::add_proarrow(std::string name, int src, int tgt)
{
    if (mode_ == Mode::spans)
        throw std::logic_error("spans tables take add_span");
    if (pro_index_.count(name))
        throw std::invalid_argument("duplicate proarrow name " + name);
    const int id = static_cast<int>(pros_.size());
    pro_index_.emplace(name, id);
    pros_.push_back({std::move(name), src, tgt, {}});
    by_ends_[{src, tgt}].push_back(id);
    return id;
}

int TableDouble::add_span(std::string name, const Span& s)
{
    check_mode(Mode::spans, "add_span");
    if (pro_index_.count(name))
        throw std::invalid_argument("duplicate proarrow name " + name);
    if (s.l.src != s.apex || s.r.src != s.apex)
        throw BoundaryError("span legs do not start at the apex");
    const int id = static_cast<int>(pros_.size());
    pro_index_.emplace(name, id);
    pros_.push_back({std::move(name), s.l.tgt, s.r.tgt, s});
    by_ends_[{s.l.tgt, s.r.tgt}].push_back(id);
    return id;
}

void TableDouble::set_unit(int object, int p)
{
    const ProEntry& e = pros_.at(static_cast<std::size_t>(p));
    if (e.src != object || e.tgt != object)
        throw BoundaryError("unit proarrow " + e.name + " is not an endo-proarrow of its object");
    units_[object] = p;
}

void TableDouble::set_hcomp(int p, int q, int r)
{
    if (mode_ == Mode::spans)
        throw std::logic_error("spans tables compose by pullback");
    const auto& a = pros_.at(static_cast<std::size_t>(p));
    const auto& b = pros_.at(static_cast<std::size_t>(q));
    const auto& c = pros_.at(static_cast<std::size_t>(r));
    if (a.tgt != b.src || c.src != a.src || c.tgt != b.tgt)
        throw BoundaryError("composite " + a.name + " (x) " + b.name + " = " + c.name + " has the wrong ends");
    hcomp_[{p, q}] = r;
}

void TableDouble::add_thin_cell(const Arrow& left, const Arrow& right, int top, int bottom)
{
    check_mode(Mode::thin, "add_thin_cell");
    thin_.emplace(left, right, top, bottom);
}

int TableDouble::add_cell(std::string name, const Arrow& left, const Arrow& right, int top, int bottom)
{
    check_mode(Mode::explicit_cells, "add_cell");
    for (const CellEntry& e : cells_)
        if (e.name == name)
            throw std::invalid_argument("duplicate cell name " + name);
    const int id = static_cast<int>(cells_.size());
    cells_.push_back({std::move(name), left, right, top, bottom});
    by_boundary_[{left, right, top, bottom}].push_back(id);
    return id;
}

void TableDouble::set_vcomp(int a, int b, int c)
{
    check_mode(Mode::explicit_cells, "set_vcomp");
    vcell_[{a, b}] = c;
}

void TableDouble::set_hcomp_cell(int a, int b, int c)
{
    check_mode(Mode::explicit_cells, "set_hcomp_cell");
    hcell_[{a, b}] = c;
}

void TableDouble::set_identity_cell(int p, int c)
{
    check_mode(Mode::explicit_cells, "set_identity_cell");
    idcell_[p] = c;
}

void TableDouble::set_unit_cell(const Arrow& f, int c)
{
    check_mode(Mode::explicit_cells, "set_unit_cell");
    unitcell_[f] = c;
}

void TableDouble::set_associator(int p, int q, int r, int c)
{
    check_mode(Mode::explicit_cells, "set_associator");
    assoc_[{p, q, r}] = c;
}

void TableDouble::set_left_unitor(int m, int c)
{
    check_mode(Mode::explicit_cells, "set_left_unitor");
    lunit_[m] = c;
}

void TableDouble::set_right_unitor(int m, int c)
{
    check_mode(Mode::explicit_cells, "set_right_unitor");
    runit_[m] = c;
}

Pro TableDouble::pro(int id) const
{
    const ProEntry& e = pros_.at(static_cast<std::size_t>(id));
    return Pro{e.src, e.tgt, static_cast<std::uint64_t>(id)};
}

int TableDouble::pro_id(const Pro& p) const
{
    if (p.code >= pros_.size())
        throw UnknownIdError("unknown proarrow handle");
    const ProEntry& e = pros_[static_cast<std::size_t>(p.code)];
    if (e.src != p.src || e.tgt != p.tgt)
        throw UnknownIdError("proarrow handle with stale endpoints");
    return static_cast<int>(p.code);
}

Span TableDouble::span(const Pro& p) const
{
    check_mode(Mode::spans, "span");
    return pros_[static_cast<std::size_t>(pro_id(p))].span;
}

std::optional<Cell> TableDouble::cell_by_id(int id) const
{
    if (mode_ != Mode::explicit_cells || id < 0 || id >= static_cast<int>(cells_.size()))
        return std::nullopt;
    const CellEntry& e = cells_[static_cast<std::size_t>(id)];
    return Cell{e.left, e.right, pro(e.top), pro(e.bottom), static_cast<std::uint64_t>(id)};
}

int TableDouble::cell_id(const Cell& c) const
{
    check_mode(Mode::explicit_cells, "cell_id");
    if (c.code >= cells_.size())
        throw UnknownIdError("unknown cell handle");
    return static_cast<int>(c.code);
}

std::vector<int> TableDouble::support() const
{
    return support_.empty() ? window() : support_;
}

std::vector<Pro> TableDouble::proarrows(int a, int b) const
{
    std::vector<Pro> out;
    auto it = by_ends_.find({a, b});
    if (it != by_ends_.end())
        for (int id : it->second)
            out.push_back(pro(id));
    return out;
}

std::optional<Cell> TableDouble::span_cell(const Arrow& left, const Arrow& right, const Pro& top,
                                           const Pro& bottom, const Arrow& theta) const
{
    const Span s = span(top);
    const Span t = span(bottom);
    const Category& c = *d0_;
    if (theta.src != s.apex || theta.tgt != t.apex)
        return std::nullopt;
    if (c.compose(t.l, theta) != c.compose(left, s.l) || c.compose(t.r, theta) != c.compose(right, s.r))
        return std::nullopt;
    return Cell{left, right, top, bottom, theta.code};
}

std::vector<Cell> TableDouble::cells(const Arrow& left, const Arrow& right, const Pro& top, const Pro& bottom) const
{
    if (left.src != top.src || right.src != top.tgt || left.tgt != bottom.src || right.tgt != bottom.tgt)
        throw BoundaryError("cell boundary does not match");
    std::vector<Cell> out;
    const int t = pro_id(top);
    const int b = pro_id(bottom);
    switch (mode_) {
    case Mode::thin:
        if (thin_.count({left, right, t, b}))
            out.push_back(Cell{left, right, top, bottom, 0});
        break;
    case Mode::explicit_cells: {
        auto it = by_boundary_.find({left, right, t, b});
        if (it != by_boundary_.end())
            for (int id : it->second)
                out.push_back(Cell{left, right, top, bottom, static_cast<std::uint64_t>(id)});
        break;
    }
    case Mode::spans: {
        const Span s = span(top);
        const Span u = span(bottom);
        const Category& c = *d0_;
        for (const Arrow& theta : mediators(c, s, u, c.compose(left, s.l), c.compose(right, s.r)))
            out.push_back(Cell{left, right, top, bottom, theta.code});
        break;
    }
    }
    return out;
}

std::optional<Cell> TableDouble::unique_cell(const Arrow& left, const Arrow& right, const Pro& top,
                                             const Pro& bottom) const
{
    auto cs = cells(left, right, top, bottom);
    if (cs.size() != 1)
        return std::nullopt;
    return cs.front();
}

Cell TableDouble::vcomp(const Cell& a, const Cell& b) const
{
    if (a.bottom != b.top)
        throw BoundaryError("vertical composite of cells with mismatched proarrows");
    const Category& c = *d0_;
    const Arrow left = c.compose(b.left, a.left);
    const Arrow right = c.compose(b.right, a.right);
    switch (mode_) {
    case Mode::thin: {
        if (!thin_.count({left, right, pro_id(a.top), pro_id(b.bottom)}))
            throw BoundaryError("vertical composite missing from the thin table");
        return Cell{left, right, a.top, b.bottom, 0};
    }
    case Mode::explicit_cells: {
        auto it = vcell_.find({cell_id(a), cell_id(b)});
        if (it == vcell_.end())
            throw BoundaryError("vertical composite " + cells_[a.code].name + " ; " + cells_[b.code].name +
                                " missing from the table");
        return *cell_by_id(it->second);
    }
    case Mode::spans: {
        const Arrow ta{span(a.top).apex, span(a.bottom).apex, a.code};
        const Arrow tb{span(b.top).apex, span(b.bottom).apex, b.code};
        return Cell{left, right, a.top, b.bottom, c.compose(tb, ta).code};
    }
    }
    throw std::logic_error("unreachable");
}

std::optional<int> TableDouble::find_span(const Span& s, Arrow* iso) const
{
    auto it = by_ends_.find({s.l.tgt, s.r.tgt});
    if (it == by_ends_.end())
        return std::nullopt;
    for (int id : it->second) {
        if (auto x = span_iso(*d0_, pros_[static_cast<std::size_t>(id)].span, s)) {
            if (iso)
                *iso = *x;
            return id;
        }
    }
    return std::nullopt;
}

const TableDouble::Cone* TableDouble::cone(int p, int q) const
{
    auto key = std::make_pair(p, q);
    auto it = cones_.find(key);
    if (it == cones_.end()) {
        std::optional<Cone> value;
        const Span& s = pros_[static_cast<std::size_t>(p)].span;
        const Span& t = pros_[static_cast<std::size_t>(q)].span;
        const Category& c = *d0_;
        if (auto pb = c.pullback(s.r, t.l)) {
            const Span composite{pb->apex, c.compose(s.l, pb->legs[0]), c.compose(t.r, pb->legs[1])};
            Arrow x;
            if (auto r = find_span(composite, &x))
                value = Cone{*r, c.compose(pb->legs[0], x), c.compose(pb->legs[1], x)};
        }
        it = cones_.emplace(key, value).first;
    }
    return it->second ? &*it->second : nullptr;
}

std::optional<Pro> TableDouble::hcomp(const Pro& p, const Pro& q) const
{
    if (p.tgt != q.src)
        throw BoundaryError("horizontal composite of proarrows with mismatched endpoints");
    const int a = pro_id(p);
    const int b = pro_id(q);
    if (mode_ == Mode::spans) {
        const Cone* k = cone(a, b);
        if (!k)
            return std::nullopt;
        return pro(k->r);
    }
    auto it = hcomp_.find({a, b});
    if (it == hcomp_.end())
        return std::nullopt;
    return pro(it->second);
}

std::optional<Cell> TableDouble::hcomp(const Cell& a, const Cell& b) const
{
    if (a.right != b.left)
        throw BoundaryError("horizontal composite of cells with mismatched arrows");
    if (mode_ == Mode::explicit_cells) {
        auto it = hcell_.find({cell_id(a), cell_id(b)});
        if (it == hcell_.end())
            return std::nullopt;
        return cell_by_id(it->second);
    }
    auto top = hcomp(a.top, b.top);
    auto bottom = hcomp(a.bottom, b.bottom);
    if (!top || !bottom)
        return std::nullopt;
    if (mode_ == Mode::thin)
        return unique_cell(a.left, b.right, *top, *bottom);
    const Category& c = *d0_;
    const Cone* k = cone(pro_id(a.top), pro_id(b.top));
    const Cone* k2 = cone(pro_id(a.bottom), pro_id(b.bottom));
    const Arrow ta{span(a.top).apex, span(a.bottom).apex, a.code};
    const Arrow tb{span(b.top).apex, span(b.bottom).apex, b.code};
    const Arrow h1 = c.compose(ta, k->u);
    const Arrow h2 = c.compose(tb, k->v);
    auto theta = c.lift(h1, k2->u, &h2, &k2->v);
    if (!theta)
        return std::nullopt;
    return span_cell(a.left, b.right, *top, *bottom, *theta);
}

std::optional<Pro> TableDouble::unit(int x) const
{
    auto it = units_.find(x);
    if (it == units_.end())
        return std::nullopt;
    return pro(it->second);
}

std::optional<Cell> TableDouble::unit_cell(const Arrow& f) const
{
    auto a = unit(f.src);
    auto b = unit(f.tgt);
    if (!a || !b)
        return std::nullopt;
    switch (mode_) {
    case Mode::thin:
        return unique_cell(f, f, *a, *b);
    case Mode::explicit_cells: {
        auto it = unitcell_.find(f);
        if (it == unitcell_.end())
            return std::nullopt;
        return cell_by_id(it->second);
    }
    case Mode::spans:
        return span_cell(f, f, *a, *b, f);
    }
    return std::nullopt;
}

Cell TableDouble::identity_cell(const Pro& p) const
{
    const Category& c = *d0_;
    const Arrow ia = c.identity(p.src);
    const Arrow ib = c.identity(p.tgt);
    switch (mode_) {
    case Mode::thin:
        if (auto x = unique_cell(ia, ib, p, p))
            return *x;
        break;
    case Mode::explicit_cells: {
        auto it = idcell_.find(pro_id(p));
        if (it != idcell_.end())
            return *cell_by_id(it->second);
        break;
    }
    case Mode::spans:
        return Cell{ia, ib, p, p, c.identity(span(p).apex).code};
    }
    throw BoundaryError("identity cell of " + pro_name(p) + " missing from the table");
}

std::optional<Cell> TableDouble::associator(const Pro& p, const Pro& q, const Pro& r) const
{
    auto pq = hcomp(p, q);
    auto qr = hcomp(q, r);
    if (!pq || !qr)
        return std::nullopt;
    auto lhs = hcomp(*pq, r);
    auto rhs = hcomp(p, *qr);
    if (!lhs || !rhs)
        return std::nullopt;
    const Category& c = *d0_;
    const Arrow ia = c.identity(p.src);
    const Arrow id = c.identity(r.tgt);
    switch (mode_) {
    case Mode::thin:
        return unique_cell(ia, id, *lhs, *rhs);
    case Mode::explicit_cells: {
        auto it = assoc_.find({pro_id(p), pro_id(q), pro_id(r)});
        if (it == assoc_.end())
            return std::nullopt;
        return cell_by_id(it->second);
    }
    case Mode::spans: {
        const Cone* k1 = cone(pro_id(p), pro_id(q));        // S -> P, Q
        const Cone* k2 = cone(k1->r, pro_id(r));            // T -> S, R
        const Cone* k3 = cone(pro_id(q), pro_id(r));        // S' -> Q, R
        const Cone* k4 = cone(pro_id(p), k3->r);            // T' -> P, S'
        const Arrow to_q = c.compose(k1->v, k2->u);
        auto y = c.lift(to_q, k3->u, &k2->v, &k3->v);
        if (!y)
            return std::nullopt;
        const Arrow to_p = c.compose(k1->u, k2->u);
        auto x = c.lift(to_p, k4->u, &*y, &k4->v);
        if (!x)
            return std::nullopt;
        return span_cell(ia, id, *lhs, *rhs, *x);
    }
    }
    return std::nullopt;
}

std::optional<Cell> TableDouble::left_unitor(const Pro& m) const
{
    auto y = unit(m.src);
    if (!y)
        return std::nullopt;
    auto ym = hcomp(*y, m);
    if (!ym)
        return std::nullopt;
    const Arrow ia = d0_->identity(m.src);
    const Arrow ib = d0_->identity(m.tgt);
    switch (mode_) {
    case Mode::thin:
        return unique_cell(ia, ib, *ym, m);
    case Mode::explicit_cells: {
        auto it = lunit_.find(pro_id(m));
        if (it == lunit_.end())
            return std::nullopt;
        return cell_by_id(it->second);
    }
    case Mode::spans:
        return span_cell(ia, ib, *ym, m, cone(pro_id(*y), pro_id(m))->v);
    }
    return std::nullopt;
}

std::optional<Cell> TableDouble::right_unitor(const Pro& m) const
{
    auto y = unit(m.tgt);
    if (!y)
        return std::nullopt;
    auto my = hcomp(m, *y);
    if (!my)
        return std::nullopt;
    const Arrow ia = d0_->identity(m.src);
    const Arrow ib = d0_->identity(m.tgt);
    switch (mode_) {
    case Mode::thin:
        return unique_cell(ia, ib, *my, m);
    case Mode::explicit_cells: {
        auto it = runit_.find(pro_id(m));
        if (it == runit_.end())
            return std::nullopt;
        return cell_by_id(it->second);
    }
    case Mode::spans:
        return span_cell(ia, ib, *my, m, cone(pro_id(m), pro_id(*y))->u);
    }
    return std::nullopt;
}

std::string TableDouble::pro_name(const Pro& p) const
{
    return pros_[static_cast<std::size_t>(pro_id(p))].name;
}

std::optional<Pro> TableDouble::parse_pro(std::string_view text) const
{
    auto it = pro_index_.find(text);
    if (it == pro_index_.end())
        return std::nullopt;
    return pro(it->second);
}

std::string TableDouble::cell_name(const Cell& c) const
{
    switch (mode_) {
    case Mode::thin:
        return "thin";
    case Mode::explicit_cells:
        return cells_[static_cast<std::size_t>(cell_id(c))].name;
    case Mode::spans:
        return d0_->arrow_name(Arrow{span(c.top).apex, span(c.bottom).apex, c.code});
    }
    return {};
}

std::optional<TabulatorData> TableDouble::tabulator_hint(const Pro& p) const
{
    if (mode_ != Mode::spans)
        return std::nullopt;
    const Span s = span(p);
    auto y = unit(s.apex);
    if (!y)
        return std::nullopt;
    auto tau = span_cell(s.l, s.r, *y, p, d0_->identity(s.apex));
    if (!tau)
        return std::nullopt;
    return TabulatorData{s.apex, s.l, s.r, *tau};
}

std::optional<ProductData> TableDouble::local_product_hint(const Pro& m, const Pro& n) const
{
    if (mode_ != Mode::spans || m.src != n.src || m.tgt != n.tgt)
        return std::nullopt;
    const Category& c = *d0_;
    const Span s = span(m);
    const Span t = span(n);
    auto pm = c.pair(m.src, m.tgt, s.l, s.r);
    auto pn = c.pair(n.src, n.tgt, t.l, t.r);
    if (!pm || !pn)
        return std::nullopt;
    auto pb = c.pullback(*pm, *pn);
    if (!pb)
        return std::nullopt;
    Arrow x;
    auto q = find_span({pb->apex, c.compose(s.l, pb->legs[0]), c.compose(s.r, pb->legs[0])}, &x);
    if (!q)
        return std::nullopt;
    const Pro qp = pro(*q);
    const Arrow ia = c.identity(m.src);
    const Arrow ib = c.identity(m.tgt);
    auto first = span_cell(ia, ib, qp, m, c.compose(pb->legs[0], x));
    auto second = span_cell(ia, ib, qp, n, c.compose(pb->legs[1], x));
    if (!first || !second)
        return std::nullopt;
    return ProductData{qp, *first, *second};
}

std::string TableDouble::validate(bool deep) const
{
    const Category& c = *d0_;
    std::ostringstream err;
    auto fail = [&](const std::string& s) {
        if (err.tellp() == 0)
            err << s;
    };
    for (const ProEntry& e : pros_) {
        if (!c.is_object(e.src) || !c.is_object(e.tgt))
            fail("proarrow " + e.name + " has an endpoint outside D0");
        if (mode_ == Mode::spans && (!c.valid(e.span.l) || !c.valid(e.span.r)))
            fail("span " + e.name + " has a leg outside D0");
    }
    if (mode_ == Mode::spans)
        for (std::size_t i = 0; i < pros_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (span_iso(c, pros_[i].span, pros_[j].span))
                    fail("spans " + pros_[j].name + " and " + pros_[i].name + " are isomorphic");
    for (auto [x, p] : units_) {
        if (mode_ == Mode::spans) {
            const Span& s = pros_[static_cast<std::size_t>(p)].span;
            if (s.apex != x || !c.is_identity(s.l) || !c.is_identity(s.r))
                fail("unit span of " + c.object_name(x) + " does not have identity legs");
        }
    }
    if (!err.str().empty())
        return err.str();

    auto boundary_ok = [&](const Arrow& l, const Arrow& r, int t, int b) {
        const ProEntry& pt = pros_[static_cast<std::size_t>(t)];
        const ProEntry& pb = pros_[static_cast<std::size_t>(b)];
        return c.valid(l) && c.valid(r) && l.src == pt.src && r.src == pt.tgt && l.tgt == pb.src &&
               r.tgt == pb.tgt;
    };
    if (mode_ == Mode::thin) {
        for (const auto& [l, r, t, b] : thin_)
            if (!boundary_ok(l, r, t, b))
                return "thin cell with an ill-typed boundary on " + pros_[static_cast<std::size_t>(t)].name;
        for (std::size_t i = 0; i < pros_.size(); ++i) {
            const ProEntry& e = pros_[i];
            if (!thin_.count({c.identity(e.src), c.identity(e.tgt), static_cast<int>(i), static_cast<int>(i)}))
                return "identity cell of " + e.name + " missing";
        }
        for (auto [x, p] : units_)
            for (auto [z, q] : units_)
                for (const Arrow& f : c.hom(x, z))
                    if (!thin_.count({f, f, p, q}))
                        return "unit cell of " + c.arrow_name(f) + " missing";
    }
    if (mode_ == Mode::explicit_cells) {
        for (const CellEntry& e : cells_)
            if (!boundary_ok(e.left, e.right, e.top, e.bottom))
                return "cell " + e.name + " has an ill-typed boundary";
        for (std::size_t i = 0; i < pros_.size(); ++i) {
            auto it = idcell_.find(static_cast<int>(i));
            if (it == idcell_.end())
                return "identity cell of " + pros_[i].name + " missing";
            const CellEntry& e = cells_.at(static_cast<std::size_t>(it->second));
            if (e.top != static_cast<int>(i) || e.bottom != static_cast<int>(i) || !c.is_identity(e.left) ||
                !c.is_identity(e.right))
                return "identity cell of " + pros_[i].name + " has the wrong boundary";
        }
        for (const auto& [key, r] : vcell_) {
            const CellEntry& a = cells_.at(static_cast<std::size_t>(key.first));
            const CellEntry& b = cells_.at(static_cast<std::size_t>(key.second));
            const CellEntry& x = cells_.at(static_cast<std::size_t>(r));
            if (a.bottom != b.top || x.top != a.top || x.bottom != b.bottom ||
                x.left != c.compose(b.left, a.left) || x.right != c.compose(b.right, a.right))
                return "vertical composite " + a.name + " ; " + b.name + " has the wrong boundary";
        }
        for (const auto& [key, r] : hcell_) {
            const CellEntry& a = cells_.at(static_cast<std::size_t>(key.first));
            const CellEntry& b = cells_.at(static_cast<std::size_t>(key.second));
            const CellEntry& x = cells_.at(static_cast<std::size_t>(r));
            auto top = hcomp_.find({a.top, b.top});
            auto bottom = hcomp_.find({a.bottom, b.bottom});
            if (a.right != b.left || top == hcomp_.end() || bottom == hcomp_.end() || x.top != top->second ||
                x.bottom != bottom->second || x.left != a.left || x.right != b.right)
                return "horizontal composite " + a.name + " | " + b.name + " has the wrong boundary";
        }
        for (const auto& [f, id] : unitcell_) {
            const CellEntry& e = cells_.at(static_cast<std::size_t>(id));
            auto a = units_.find(f.src);
            auto b = units_.find(f.tgt);
            if (a == units_.end() || b == units_.end() || e.left != f || e.right != f || e.top != a->second ||
                e.bottom != b->second)
                return "unit cell of " + c.arrow_name(f) + " has the wrong boundary";
        }
    }
    if (!deep)
        return {};

    // Closure of composites and the laws of the cell tables.
    if (mode_ == Mode::thin) {
        std::map<int, std::vector<const Boundary*>> by_top;
        for (const Boundary& b : thin_)
            by_top[std::get<2>(b)].push_back(&b);
        for (const Boundary& a : thin_)
            for (const Boundary* b : by_top[std::get<3>(a)]) {
                const Boundary comp{c.compose(std::get<0>(*b), std::get<0>(a)),
                                    c.compose(std::get<1>(*b), std::get<1>(a)), std::get<2>(a), std::get<3>(*b)};
                if (!thin_.count(comp))
                    return "vertical composite missing below " + pros_[static_cast<std::size_t>(std::get<2>(a))].name;
            }
    }
    if (mode_ == Mode::explicit_cells) {
        const int n = static_cast<int>(cells_.size());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (cells_[a].bottom == cells_[b].top && !vcell_.count({a, b}))
                    return "vertical composite " + cells_[a].name + " ; " + cells_[b].name + " missing";
        for (int a = 0; a < n; ++a) {
            const Cell ca = *cell_by_id(a);
            if (vcomp(identity_cell(ca.top), ca) != ca || vcomp(ca, identity_cell(ca.bottom)) != ca)
                return "identity cells are not units for " + cells_[a].name;
            for (int b = 0; b < n; ++b) {
                if (cells_[a].bottom != cells_[b].top)
                    continue;
                const Cell ab = vcomp(ca, *cell_by_id(b));
                for (int x = 0; x < n; ++x)
                    if (cells_[b].bottom == cells_[x].top &&
                        vcomp(ab, *cell_by_id(x)) != vcomp(ca, vcomp(*cell_by_id(b), *cell_by_id(x))))
                        return "vertical composition is not associative at " + cells_[a].name;
            }
        }
        // Interchange wherever both sides are defined.
        for (const auto& [k1, ab] : hcell_)
            for (const auto& [k2, cd] : hcell_) {
                const int a = k1.first, b = k1.second, x = k2.first, y = k2.second;
                if (cells_[a].bottom != cells_[x].top || cells_[b].bottom != cells_[y].top)
                    continue;
                auto lhs = hcomp(vcomp(*cell_by_id(a), *cell_by_id(x)), vcomp(*cell_by_id(b), *cell_by_id(y)));
                if (!lhs || *lhs != vcomp(*cell_by_id(ab), *cell_by_id(cd)))
                    return "interchange fails for " + cells_[a].name + ", " + cells_[b].name + ", " +
                           cells_[x].name + ", " + cells_[y].name;
            }
    }
    if (mode_ == Mode::thin) {
        std::map<Arrow, std::vector<const Boundary*>> by_left;
        for (const Boundary& b : thin_)
            by_left[std::get<0>(b)].push_back(&b);
        for (const Boundary& a : thin_)
            for (const Boundary* b : by_left[std::get<1>(a)]) {
                auto top = hcomp_.find({std::get<2>(a), std::get<2>(*b)});
                auto bottom = hcomp_.find({std::get<3>(a), std::get<3>(*b)});
                if (pros_[std::get<2>(a)].tgt != pros_[std::get<2>(*b)].src || top == hcomp_.end() ||
                    bottom == hcomp_.end())
                    continue;
                if (!thin_.count({std::get<0>(a), std::get<1>(*b), top->second, bottom->second}))
                    return "horizontal composite missing beside " +
                           pros_[static_cast<std::size_t>(std::get<2>(a))].name;
            }
    }
    return {};
}

std::unique_ptr<TableDouble> tabulate_thin(const DoubleCategory& d, std::shared_ptr<const Category> d0,
                                           std::string d0_spec, const std::vector<Pro>& listed,
                                           std::vector<int> support)
{
    auto t = std::make_unique<TableDouble>(TableDouble::Mode::thin, d0, std::move(d0_spec));
    t->set_name(d.name());
    t->set_support(std::move(support));
    std::map<Pro, int> ids;
    for (const Pro& p : listed)
        ids.emplace(p, t->add_proarrow(d.pro_name(p), p.src, p.tgt));
    for (int x : d0->objects())
        if (auto y = d.unit(x); y && ids.count(*y))
            t->set_unit(x, ids.at(*y));
    for (const Pro& p : listed)
        for (const Pro& q : listed)
            if (p.tgt == q.src)
                if (auto r = d.hcomp(p, q); r && ids.count(*r))
                    t->set_hcomp(ids.at(p), ids.at(q), ids.at(*r));
    for (const Pro& top : listed)
        for (const Pro& bottom : listed) {
            const auto ls = d0->hom(top.src, bottom.src);
            const auto rs = d0->hom(top.tgt, bottom.tgt);
            for (const Arrow& l : ls)
                for (const Arrow& r : rs) {
                    const auto cs = d.cells(l, r, top, bottom);
                    if (cs.size() > 1)
                        throw std::invalid_argument("tabulate_thin: double category is not thin");
                    if (!cs.empty())
                        t->add_thin_cell(l, r, ids.at(top), ids.at(bottom));
                }
        }
    return t;
}

std::unique_ptr<TableDouble> rel_finset_table(int n)
{
    const int big = std::max(n * n, n);
    auto c = std::make_shared<FinSetCategory>(big);
    auto rel = build_rel_double(c, std::make_shared<EpiMonoFS>(*c), false);
    std::vector<Pro> listed;
    std::vector<int> support;
    for (int a = 0; a <= n; ++a) {
        support.push_back(a);
        for (int b = 0; b <= n; ++b)
            for (const Pro& p : rel->proarrows(a, b))
                listed.push_back(p);
    }
    for (int x = n + 1; x <= big; ++x)
        listed.push_back(*rel->unit(x));
    auto t = tabulate_thin(*rel, c, "finset(" + std::to_string(big) + ")", listed, support);
    t->set_name("rel-table(" + std::to_string(n) + ")");
    return t;
}

namespace {

std::string span_name(const std::vector<std::pair<int, int>>& pairs, int a, int b)
{
    std::ostringstream os;
    os << '<';
    for (std::size_t i = 0; i < pairs.size(); ++i)
        os << (i ? "," : "") << '(' << pairs[i].first + 1 << ',' << pairs[i].second + 1 << ')';
    os << ">:" << a << "-|->" << b;
    return os.str();
}

}  // namespace

std::unique_ptr<TableDouble> span_control(int n, int max_apex)
{
    auto c = std::make_shared<FinSetCategory>(max_apex);
    auto t = std::make_unique<TableDouble>(TableDouble::Mode::spans, c, "finset(" + std::to_string(max_apex) + ")");
    t->set_name("spans(" + std::to_string(n) + "," + std::to_string(max_apex) + ")");
    std::vector<int> support;
    for (int a = 0; a <= n; ++a)
        support.push_back(a);
    t->set_support(support);
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            const int cells = a * b;
            // Multisets of pairs as non-decreasing index sequences, by size.
            for (int k = 0; k <= max_apex; ++k) {
                if (cells == 0 && k > 0)
                    break;
                std::vector<int> idx(static_cast<std::size_t>(k), 0);
                while (true) {
                    std::vector<std::pair<int, int>> pairs;
                    std::vector<int> l, r;
                    for (int i : idx) {
                        pairs.emplace_back(i / b, i % b);
                        l.push_back(i / b);
                        r.push_back(i % b);
                    }
                    t->add_span(span_name(pairs, a, b), Span{k, make_function(k, a, l), make_function(k, b, r)});
                    int j = k - 1;
                    while (j >= 0 && idx[j] == cells - 1)
                        --j;
                    if (j < 0)
                        break;
                    ++idx[j];
                    for (int m = j + 1; m < k; ++m)
                        idx[m] = idx[j];
                }
            }
        }
    for (int x = 0; x <= max_apex; ++x) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < x; ++i)
            pairs.emplace_back(i, i);
        const std::string name = span_name(pairs, x, x);
        auto p = t->parse_pro(name);
        int id = p ? static_cast<int>(p->code) : t->add_span(name, Span{x, c->identity(x), c->identity(x)});
        t->set_unit(x, id);
    }
    return t;
}

namespace {

std::shared_ptr<FiniteCategory> point_category()
{
    auto c = std::make_shared<FiniteCategory>();
    const int x = c->add_object("*");
    const int id = c->add_morphism("1", x, x);
    c->set_identity(x, id);
    c->set_composite(id, id, id);
    return c;
}

std::unique_ptr<TableDouble> one_object(bool with_idempotent)
{
    auto c = point_category();
    auto t = std::make_unique<TableDouble>(TableDouble::Mode::explicit_cells, c, "inline");
    const Arrow id = c->identity(0);
    const int y = t->add_proarrow("y", 0, 0);
    t->set_unit(0, y);
    t->set_hcomp(y, y, y);
    const int one = t->add_cell("1", id, id, y, y);
    std::vector<int> cells{one};
    if (with_idempotent)
        cells.push_back(t->add_cell("e", id, id, y, y));
    // {1, e} under both compositions is the two-element semilattice.
    for (int a : cells)
        for (int b : cells) {
            const int ab = (a == one) ? b : a;
            t->set_vcomp(a, b, ab);
            t->set_hcomp_cell(a, b, ab);
        }
    t->set_identity_cell(y, one);
    t->set_unit_cell(id, one);
    t->set_associator(y, y, y, one);
    t->set_left_unitor(y, one);
    t->set_right_unitor(y, one);
    return t;
}

}  // namespace

std::unique_ptr<TableDouble> unit_pure_control()
{
    auto t = one_object(true);
    t->set_name("unit-pure-control");
    return t;
}

std::unique_ptr<TableDouble> trivial_double()
{
    auto t = one_object(false);
    t->set_name("trivial");
    return t;
}

std::unique_ptr<TableDouble> deleted_companion_control()
{
    auto c = std::make_shared<FiniteCategory>(chain_poset(2));
    auto rel = build_rel_double(c, std::make_shared<TableFS>(iso_all(*c)));
    std::vector<Pro> listed;
    for (int a : c->objects())
        for (int b : c->objects())
            if (!(a == 0 && b == 1))
                for (const Pro& p : rel->proarrows(a, b))
                    listed.push_back(p);
    auto t = tabulate_thin(*rel, c, "inline", listed, c->objects());
    t->set_name("deleted-companion-control");
    return t;
}

}  // namespace relcheck
