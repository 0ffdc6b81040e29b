#include "relcheck/rel_double.hpp"

#include "relcheck/limits.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <sstream>

namespace relcheck {

std::vector<Pro> MatrixCodec::enumerate(int a, int b) const
{
    if (a * b > 24)
        throw UniverseError("refusing to enumerate 2^" + std::to_string(a * b) + " relations");
    std::vector<Pro> out;
    const std::uint64_t n = 1ULL << (a * b);
    out.reserve(static_cast<std::size_t>(n));
    for (std::uint64_t bits = 0; bits < n; ++bits)
        out.push_back(Pro{a, b, bits});
    return out;
}

namespace {

bool small(int a, int b)
{
    return a * b <= 64;
}

}  // namespace

MatrixCodec::Pairs MatrixCodec::pairs(const Pro& p) const
{
    if (!small(p.src, p.tgt)) {
        if (p.code >= big_.size())
            throw UnknownIdError("unknown relation handle");
        return big_[static_cast<std::size_t>(p.code)];
    }
    Pairs out;
    for (int i = 0; i < p.src; ++i)
        for (int j = 0; j < p.tgt; ++j)
            if ((p.code >> (i * p.tgt + j)) & 1U)
                out.push_back({i, j});
    return out;
}

Pro MatrixCodec::intern(int a, int b, Pairs ps) const
{
    std::sort(ps.begin(), ps.end());
    auto key = std::make_tuple(a, b, ps);
    auto it = big_index_.find(key);
    if (it == big_index_.end()) {
        it = big_index_.emplace(std::move(key), big_.size()).first;
        big_.push_back(std::move(ps));
    }
    return Pro{a, b, it->second};
}

Span MatrixCodec::span(const Pro& p) const
{
    std::vector<int> l, r;
    for (auto [i, j] : pairs(p)) {
        l.push_back(i);
        r.push_back(j);
    }
    const int n = static_cast<int>(l.size());
    return {n, make_function(n, p.src, l), make_function(n, p.tgt, r)};
}

std::optional<Pro> MatrixCodec::encode(const Span& s) const
{
    const int a = s.l.tgt;
    const int b = s.r.tgt;
    if (s.l.src != s.apex || s.r.src != s.apex)
        return std::nullopt;
    if (small(a, b)) {
        std::uint64_t bits = 0;
        for (int k = 0; k < s.apex; ++k) {
            const std::uint64_t bit = 1ULL << (apply(s.l, k) * b + apply(s.r, k));
            if (bits & bit)
                return std::nullopt;
            bits |= bit;
        }
        return Pro{a, b, bits};
    }
    Pairs ps;
    for (int k = 0; k < s.apex; ++k)
        ps.push_back({apply(s.l, k), apply(s.r, k)});
    std::sort(ps.begin(), ps.end());
    if (std::adjacent_find(ps.begin(), ps.end()) != ps.end())
        return std::nullopt;
    return intern(a, b, std::move(ps));
}

std::string MatrixCodec::name(const Pro& p) const
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto [i, j] : pairs(p)) {
        os << (first ? "" : ",") << '(' << i + 1 << ',' << j + 1 << ')';
        first = false;
    }
    os << "}:" << p.src << "-|->" << p.tgt;
    return os.str();
}

std::optional<Pro> MatrixCodec::parse(std::string_view text) const
{
    const auto colon = text.rfind(':');
    const auto bar = text.rfind("-|->");
    if (colon == std::string_view::npos || bar == std::string_view::npos || bar < colon)
        return std::nullopt;
    int a = -1, b = -1;
    try {
        a = std::stoi(std::string(text.substr(colon + 1, bar - colon - 1)));
        b = std::stoi(std::string(text.substr(bar + 4)));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (a < 0 || b < 0 || a > max_finset || b > max_finset)
        return std::nullopt;
    if (small(a, b)) {
        auto m = parse_matrix(text.substr(0, colon), a, b);
        if (!m)
            return std::nullopt;
        return pro(*m);
    }
    // Large relations: the same "{(i,j),...}" list, read pair by pair.
    std::string body(text.substr(0, colon));
    if (body.size() < 2 || body.front() != '{' || body.back() != '}')
        return std::nullopt;
    body = body.substr(1, body.size() - 2);
    Pairs ps;
    std::size_t pos = 0;
    while (pos < body.size()) {
        int i = 0, j = 0, used = 0;
        if (std::sscanf(body.c_str() + pos, " (%d,%d)%n", &i, &j, &used) != 2 || used == 0)
            return std::nullopt;
        if (i < 1 || i > a || j < 1 || j > b)
            return std::nullopt;
        ps.push_back({i - 1, j - 1});
        pos += static_cast<std::size_t>(used);
        while (pos < body.size() && (body[pos] == ' ' || body[pos] == ','))
            ++pos;
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return intern(a, b, std::move(ps));
}

SearchCodec::SearchCodec(const Category& c, const FactorizationSystem& fs) : c_(&c), fs_(&fs)
{
    const auto obs = c.objects();
    for (int a : obs)
        for (int b : obs) {
            auto& list = spans_[{a, b}];
            for (int x : obs)
                for (const Arrow& l : c.hom(x, a))
                    for (const Arrow& r : c.hom(x, b)) {
                        Span s{x, l, r};
                        if (!monic(s))
                            continue;
                        bool seen = false;
                        for (const Span& t : list) {
                            auto u = c.lift(s.l, t.l, &s.r, &t.r);
                            if (u && inverse(c, *u)) {
                                seen = true;
                                break;
                            }
                        }
                        if (!seen)
                            list.push_back(s);
                    }
        }
}

bool SearchCodec::monic(const Span& s) const
{
    auto p = c_->pair(s.l.tgt, s.r.tgt, s.l, s.r);
    return p && fs_->in_right(*p);
}

std::vector<Pro> SearchCodec::enumerate(int a, int b) const
{
    std::vector<Pro> out;
    auto it = spans_.find({a, b});
    if (it == spans_.end())
        return out;
    for (std::size_t i = 0; i < it->second.size(); ++i)
        out.push_back(Pro{a, b, i});
    return out;
}

Span SearchCodec::span(const Pro& p) const
{
    auto it = spans_.find({p.src, p.tgt});
    if (it == spans_.end() || p.code >= it->second.size())
        throw UnknownIdError("unknown relation handle");
    return it->second[static_cast<std::size_t>(p.code)];
}

std::optional<Pro> SearchCodec::encode(const Span& s) const
{
    if (!monic(s))
        return std::nullopt;
    auto it = spans_.find({s.l.tgt, s.r.tgt});
    if (it == spans_.end())
        return std::nullopt;
    for (std::size_t i = 0; i < it->second.size(); ++i) {
        const Span& t = it->second[i];
        auto u = c_->lift(s.l, t.l, &s.r, &t.r);
        if (u && inverse(*c_, *u))
            return Pro{s.l.tgt, s.r.tgt, i};
    }
    return std::nullopt;
}

std::string SearchCodec::name(const Pro& p) const
{
    const Span s = span(p);
    return c_->object_name(s.apex) + "<" + c_->arrow_name(s.l) + "," + c_->arrow_name(s.r) + ">";
}

std::optional<Pro> SearchCodec::parse(std::string_view text) const
{
    for (const auto& [key, list] : spans_)
        for (std::size_t i = 0; i < list.size(); ++i) {
            Pro p{key.first, key.second, i};
            if (name(p) == text)
                return p;
        }
    return std::nullopt;
}

RelDouble::RelDouble(std::shared_ptr<const Category> c, std::shared_ptr<const FactorizationSystem> fs,
                     std::unique_ptr<RelationCodec> codec)
    : c_(std::move(c)), fs_(std::move(fs)), codec_(std::move(codec))
{
}

std::string RelDouble::name() const
{
    return "Rel(" + fs_->name() + ")";
}

Arrow RelDouble::mediator(const Cell& c) const
{
    return Arrow{span(c.top).apex, span(c.bottom).apex, c.code};
}

std::vector<Pro> RelDouble::proarrows(int a, int b) const
{
    return codec_->enumerate(a, b);
}

std::optional<Cell> RelDouble::cell(const Arrow& left, const Arrow& right, const Pro& top, const Pro& bottom) const
{
    if (left.src != top.src || right.src != top.tgt || left.tgt != bottom.src || right.tgt != bottom.tgt)
        throw BoundaryError("cell boundary does not match");
    const Span s = span(top);
    const Span t = span(bottom);
    const Arrow h1 = c_->compose(left, s.l);
    const Arrow h2 = c_->compose(right, s.r);
    auto theta = c_->lift(h1, t.l, &h2, &t.r);
    if (!theta)
        return std::nullopt;
    return Cell{left, right, top, bottom, theta->code};
}

std::vector<Cell> RelDouble::cells(const Arrow& left, const Arrow& right, const Pro& top, const Pro& bottom) const
{
    std::vector<Cell> out;
    if (auto c = cell(left, right, top, bottom))
        out.push_back(*c);
    return out;
}

Cell RelDouble::vcomp(const Cell& a, const Cell& b) const
{
    if (a.bottom != b.top)
        throw BoundaryError("vertical composite of cells with mismatched proarrows");
    const Arrow theta = c_->compose(mediator(b), mediator(a));
    return Cell{c_->compose(b.left, a.left), c_->compose(b.right, a.right), a.top, b.bottom, theta.code};
}

std::optional<Pro> RelDouble::image(int a, int b, const Arrow& l, const Arrow& r) const
{
    auto u = c_->pair(a, b, l, r);
    auto prod = c_->product(a, b);
    if (!u || !prod)
        return std::nullopt;
    auto ef = fs_->factorize(*u);
    if (!ef)
        return std::nullopt;
    return encode({ef->m.src, c_->compose(prod->legs[0], ef->m), c_->compose(prod->legs[1], ef->m)});
}

std::optional<Pro> RelDouble::hcomp(const Pro& p, const Pro& q) const
{
    if (p.tgt != q.src)
        throw BoundaryError("horizontal composite of proarrows with mismatched endpoints");
    const Span s = span(p);
    const Span t = span(q);
    auto pb = c_->pullback(s.r, t.l);
    if (!pb)
        return std::nullopt;
    return image(p.src, q.tgt, c_->compose(s.l, pb->legs[0]), c_->compose(t.r, pb->legs[1]));
}

std::optional<Cell> RelDouble::hcomp(const Cell& a, const Cell& b) const
{
    if (a.right != b.left)
        throw BoundaryError("horizontal composite of cells with mismatched arrows");
    auto top = hcomp(a.top, b.top);
    auto bottom = hcomp(a.bottom, b.bottom);
    if (!top || !bottom)
        return std::nullopt;
    return cell(a.left, b.right, *top, *bottom);
}

std::optional<Pro> RelDouble::unit(int x) const
{
    if (!c_->is_object(x))
        return std::nullopt;
    const Arrow id = c_->identity(x);
    return encode({x, id, id});
}

std::optional<Cell> RelDouble::unit_cell(const Arrow& f) const
{
    auto a = unit(f.src);
    auto b = unit(f.tgt);
    if (!a || !b)
        return std::nullopt;
    return cell(f, f, *a, *b);
}

Cell RelDouble::identity_cell(const Pro& p) const
{
    return Cell{c_->identity(p.src), c_->identity(p.tgt), p, p, c_->identity(span(p).apex).code};
}

std::optional<Cell> RelDouble::associator(const Pro& p, const Pro& q, const Pro& r) const
{
    auto pq = hcomp(p, q);
    auto qr = hcomp(q, r);
    if (!pq || !qr)
        return std::nullopt;
    auto lhs = hcomp(*pq, r);
    auto rhs = hcomp(p, *qr);
    if (!lhs || !rhs)
        return std::nullopt;
    return cell(c_->identity(p.src), c_->identity(r.tgt), *lhs, *rhs);
}

std::optional<Cell> RelDouble::left_unitor(const Pro& m) const
{
    auto y = unit(m.src);
    if (!y)
        return std::nullopt;
    auto ym = hcomp(*y, m);
    if (!ym)
        return std::nullopt;
    return cell(c_->identity(m.src), c_->identity(m.tgt), *ym, m);
}

std::optional<Cell> RelDouble::right_unitor(const Pro& m) const
{
    auto y = unit(m.tgt);
    if (!y)
        return std::nullopt;
    auto my = hcomp(m, *y);
    if (!my)
        return std::nullopt;
    return cell(c_->identity(m.src), c_->identity(m.tgt), *my, m);
}

std::string RelDouble::cell_name(const Cell& c) const
{
    return c_->arrow_name(mediator(c));
}

std::optional<CompanionData> RelDouble::companion_hint(const Arrow& f) const
{
    auto pro = encode({f.src, c_->identity(f.src), f});
    auto ya = unit(f.src);
    auto yb = unit(f.tgt);
    if (!pro || !ya || !yb)
        return std::nullopt;
    auto u = cell(c_->identity(f.src), f, *ya, *pro);
    auto e = cell(f, c_->identity(f.tgt), *pro, *yb);
    if (!u || !e)
        return std::nullopt;
    return CompanionData{*pro, *u, *e};
}

std::optional<CompanionData> RelDouble::conjoint_hint(const Arrow& f) const
{
    auto pro = encode({f.src, f, c_->identity(f.src)});
    auto ya = unit(f.src);
    auto yb = unit(f.tgt);
    if (!pro || !ya || !yb)
        return std::nullopt;
    auto u = cell(f, c_->identity(f.src), *ya, *pro);
    auto e = cell(c_->identity(f.tgt), f, *pro, *yb);
    if (!u || !e)
        return std::nullopt;
    return CompanionData{*pro, *u, *e};
}

std::optional<TabulatorData> RelDouble::tabulator_hint(const Pro& p) const
{
    const Span s = span(p);
    auto y = unit(s.apex);
    if (!y)
        return std::nullopt;
    auto tau = cell(s.l, s.r, *y, p);
    if (!tau)
        return std::nullopt;
    return TabulatorData{s.apex, s.l, s.r, *tau};
}

std::optional<CartesianCellData> RelDouble::restriction_hint(const Arrow& f, const Pro& n, const Arrow& g) const
{
    if (f.tgt != n.src || g.tgt != n.tgt)
        throw BoundaryError("restriction niche does not match");
    const Span s = span(n);
    auto npair = c_->pair(n.src, n.tgt, s.l, s.r);
    auto fg = c_->product_arrow(f, g);
    auto xy = c_->product(f.src, g.src);
    if (!npair || !fg || !xy)
        return std::nullopt;
    auto pb = c_->pullback(*fg, *npair);
    if (!pb)
        return std::nullopt;
    const Arrow k = pb->legs[0];
    auto pro = encode({pb->apex, c_->compose(xy->legs[0], k), c_->compose(xy->legs[1], k)});
    if (!pro)
        return std::nullopt;
    auto rho = cell(f, g, *pro, n);
    if (!rho)
        return std::nullopt;
    return CartesianCellData{*pro, *rho};
}

std::optional<CartesianCellData> RelDouble::extension_hint(const Arrow& f, const Pro& m, const Arrow& g) const
{
    if (f.src != m.src || g.src != m.tgt)
        throw BoundaryError("extension niche does not match");
    const Span s = span(m);
    auto pro = image(f.tgt, g.tgt, c_->compose(f, s.l), c_->compose(g, s.r));
    if (!pro)
        return std::nullopt;
    auto xi = cell(f, g, m, *pro);
    if (!xi)
        return std::nullopt;
    return CartesianCellData{*pro, *xi};
}

std::optional<ProductData> RelDouble::local_product_hint(const Pro& m, const Pro& n) const
{
    if (m.src != n.src || m.tgt != n.tgt)
        throw BoundaryError("local product of non-parallel proarrows");
    const Span s = span(m);
    const Span t = span(n);
    auto pm = c_->pair(m.src, m.tgt, s.l, s.r);
    auto pn = c_->pair(n.src, n.tgt, t.l, t.r);
    if (!pm || !pn)
        return std::nullopt;
    auto pb = c_->pullback(*pm, *pn);
    if (!pb)
        return std::nullopt;
    auto pro = encode({pb->apex, c_->compose(s.l, pb->legs[0]), c_->compose(s.r, pb->legs[0])});
    if (!pro)
        return std::nullopt;
    const Arrow ia = c_->identity(m.src);
    const Arrow ib = c_->identity(m.tgt);
    auto first = cell(ia, ib, *pro, m);
    auto second = cell(ia, ib, *pro, n);
    if (!first || !second)
        return std::nullopt;
    return ProductData{*pro, *first, *second};
}

std::optional<ProductData> RelDouble::cartesian_product_hint(const Pro& m, const Pro& n) const
{
    const Span s = span(m);
    const Span t = span(n);
    auto st = c_->product(s.apex, t.apex);
    auto ac = c_->product(m.src, n.src);
    auto bd = c_->product(m.tgt, n.tgt);
    if (!st || !ac || !bd)
        return std::nullopt;
    auto l = c_->product_arrow(s.l, t.l);
    auto r = c_->product_arrow(s.r, t.r);
    if (!l || !r)
        return std::nullopt;
    auto pro = encode({st->apex, *l, *r});
    if (!pro)
        return std::nullopt;
    auto first = cell(ac->legs[0], bd->legs[0], *pro, m);
    auto second = cell(ac->legs[1], bd->legs[1], *pro, n);
    if (!first || !second)
        return std::nullopt;
    return ProductData{*pro, *first, *second};
}

std::optional<Arrow> RelDouble::relation_morphism(const Pro& r, const Pro& s) const
{
    if (r.src != s.src || r.tgt != s.tgt)
        throw BoundaryError("morphism of relations needs parallel relations");
    const Span a = span(r);
    const Span b = span(s);
    return c_->lift(a.l, b.l, &a.r, &b.r);
}

std::unique_ptr<RelDouble> build_rel_double(std::shared_ptr<const Category> c,
                                            std::shared_ptr<const FactorizationSystem> fs, bool validate)
{
    if (validate) {
        const FsReport rep = check_factorization_system(*fs);
        if (!rep.ok()) {
            std::ostringstream os;
            os << "factorization system " << fs->name() << " fails:";
            for (const FsClause* cl : rep.clauses())
                if (cl->verdict == Verdict::fail)
                    os << ' ' << cl->name << " (" << cl->detail << ")";
            throw InvalidFactorizationSystem(os.str());
        }
    }
    std::unique_ptr<RelationCodec> codec;
    if (auto fin = dynamic_cast<const FinSetCategory*>(c.get()))
        codec = std::make_unique<MatrixCodec>(fin->cap());
    else
        codec = std::make_unique<SearchCodec>(*c, *fs);
    return std::make_unique<RelDouble>(std::move(c), std::move(fs), std::move(codec));
}

std::unique_ptr<RelDouble> rel_finset(int cap)
{
    auto c = std::make_shared<FinSetCategory>(cap);
    auto fs = std::make_shared<EpiMonoFS>(*c);
    return build_rel_double(c, fs, false);
}

}  // namespace relcheck
