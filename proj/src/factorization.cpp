#include "relcheck/factorization.hpp"

#include "relcheck/limits.hpp"

#include <sstream>

namespace relcheck {

TableFS::TableFS(const Category& c, Predicate left, Predicate right, std::string name)
    : c_(&c), left_(std::move(left)), right_(std::move(right)), name_(std::move(name))
{
}

TableFS::TableFS(const Category& c, std::set<Arrow> left, std::set<Arrow> right, std::string name)
    : c_(&c),
      left_([l = std::move(left)](const Arrow& f) { return l.count(f) > 0; }),
      right_([r = std::move(right)](const Arrow& f) { return r.count(f) > 0; }),
      name_(std::move(name))
{
}

std::optional<Factorization> TableFS::factorize(const Arrow& f) const
{
    if (auto it = pinned_.find(f); it != pinned_.end())
        return it->second;
    return choose_factorization(*c_, left_, right_, f);
}

std::optional<Factorization> choose_factorization(const Category& c,
                                                  const std::function<bool(const Arrow&)>& left,
                                                  const std::function<bool(const Arrow&)>& right,
                                                  const Arrow& f)
{
    const Arrow ida = c.identity(f.src);
    const Arrow idb = c.identity(f.tgt);
    if (left(f) && right(idb))
        return Factorization{f, idb};
    if (right(f) && left(ida))
        return Factorization{ida, f};
    for (int k : c.objects()) {
        auto es = c.hom(f.src, k);
        for (const Arrow& m : c.hom(k, f.tgt)) {
            if (!right(m))
                continue;
            for (const Arrow& e : es)
                if (left(e) && c.compose(m, e) == f)
                    return Factorization{e, m};
        }
    }
    return std::nullopt;
}

bool is_iso(const Category& c, const Arrow& f)
{
    return inverse(c, f).has_value();
}

TableFS iso_all(const Category& c)
{
    return TableFS(
        c, [&c](const Arrow& f) { return is_iso(c, f); }, [](const Arrow&) { return true; }, "iso-all");
}

TableFS all_iso(const Category& c)
{
    return TableFS(
        c, [](const Arrow&) { return true; }, [&c](const Arrow& f) { return is_iso(c, f); }, "all-iso");
}

std::vector<Arrow> diagonal_fillers(const Category& c, const LiftingSquare& sq)
{
    std::vector<Arrow> out;
    for (const Arrow& d : c.hom(sq.e.tgt, sq.m.src))
        if (c.compose(d, sq.e) == sq.top && c.compose(sq.m, d) == sq.bottom)
            out.push_back(d);
    return out;
}

Arrow fill_diagonal(const Category& c, const LiftingSquare& sq)
{
    if (c.compose(sq.m, sq.top) != c.compose(sq.bottom, sq.e))
        throw BoundaryError("lifting square does not commute");
    auto ds = diagonal_fillers(c, sq);
    if (ds.size() != 1) {
        std::ostringstream os;
        os << "square (e=" << c.arrow_name(sq.e) << ", m=" << c.arrow_name(sq.m) << ", top=" << c.arrow_name(sq.top)
           << ", bottom=" << c.arrow_name(sq.bottom) << ") has " << ds.size() << " diagonal fillers";
        throw OrthogonalityError(os.str());
    }
    return ds.front();
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::skip:
        return "skip";
    }
    return "?";
}

bool FsReport::ok() const
{
    for (const FsClause* c : clauses())
        if (c->verdict == Verdict::fail)
            return false;
    return true;
}

std::vector<std::string> FsReport::failed() const
{
    std::vector<std::string> out;
    for (const FsClause* c : clauses())
        if (c->verdict == Verdict::fail)
            out.push_back(c->name);
    return out;
}

std::vector<Arrow> all_arrows(const Category& c)
{
    std::vector<Arrow> out;
    for (int a : c.objects())
        for (int b : c.objects())
            for (const Arrow& f : c.hom(a, b))
                out.push_back(f);
    return out;
}

namespace {

void violate(FsClause& clause, const Category& c, std::vector<Arrow> witness, const std::string& what)
{
    if (clause.verdict != Verdict::fail) {
        std::ostringstream os;
        os << what;
        for (const Arrow& a : witness)
            os << ' ' << c.arrow_name(a);
        clause.detail = os.str();
    }
    clause.verdict = Verdict::fail;
    clause.witnesses.push_back(std::move(witness));
}

// Isos u: mid(e) -> mid(e2) with u o e = e2 and m2 o u = m.
int connecting_isos(const Category& c, const Factorization& a, const Factorization& b)
{
    int n = 0;
    for (const Arrow& u : c.hom(a.e.tgt, b.e.tgt))
        if (c.compose(u, a.e) == b.e && c.compose(b.m, u) == a.m && is_iso(c, u))
            ++n;
    return n;
}

}  // namespace

FsReport check_factorization_system(const FactorizationSystem& fs)
{
    const Category& c = fs.category();
    FsReport rep;
    const auto arrows = all_arrows(c);
    std::vector<Arrow> left, right;
    for (const Arrow& f : arrows) {
        if (fs.in_left(f))
            left.push_back(f);
        if (fs.in_right(f))
            right.push_back(f);
    }

    for (const Arrow& f : arrows) {
        auto ef = fs.factorize(f);
        if (!ef) {
            violate(rep.existence, c, {f}, "no factorization of");
            continue;
        }
        if (ef->e.src != f.src || ef->m.tgt != f.tgt || ef->e.tgt != ef->m.src || c.compose(ef->m, ef->e) != f ||
            !fs.in_left(ef->e) || !fs.in_right(ef->m)) {
            violate(rep.existence, c, {f, ef->e, ef->m}, "chosen factorization is invalid for");
            continue;
        }
        for (int k : c.objects())
            for (const Arrow& m : c.hom(k, f.tgt)) {
                if (!fs.in_right(m))
                    continue;
                for (const Arrow& e : c.hom(f.src, k))
                    if (fs.in_left(e) && c.compose(m, e) == f &&
                        connecting_isos(c, *ef, Factorization{e, m}) != 1)
                        violate(rep.uniqueness, c, {f, e, m}, "factorizations not uniquely isomorphic:");
            }
    }

    for (const Arrow& e : left)
        for (const Arrow& m : right)
            for (const Arrow& top : c.hom(e.src, m.src))
                for (const Arrow& bottom : c.hom(e.tgt, m.tgt)) {
                    if (c.compose(m, top) != c.compose(bottom, e))
                        continue;
                    if (diagonal_fillers(c, {e, m, top, bottom}).size() != 1)
                        violate(rep.orthogonality, c, {e, m, top, bottom}, "lifting square without unique filler:");
                }

    for (const Arrow& f : arrows)
        if (is_iso(c, f)) {
            if (!fs.in_left(f))
                violate(rep.closure, c, {f}, "iso outside E:");
            if (!fs.in_right(f))
                violate(rep.closure, c, {f}, "iso outside M:");
        }
    for (const Arrow& f : left)
        for (const Arrow& g : left)
            if (f.tgt == g.src && !fs.in_left(c.compose(g, f)))
                violate(rep.closure, c, {g, f}, "E not closed under composition:");
    for (const Arrow& f : right)
        for (const Arrow& g : right)
            if (f.tgt == g.src && !fs.in_right(c.compose(g, f)))
                violate(rep.closure, c, {g, f}, "M not closed under composition:");

    for (const Arrow& e : left)
        for (int x : c.objects())
            for (const Arrow& g : c.hom(x, e.tgt)) {
                LimitDiagram d;
                d.shape = LimitShape::pullback;
                d.f = g;
                d.g = e;
                auto cone = find_limit(c, d);
                if (cone && !fs.in_left(cone->legs[0]))
                    violate(rep.stability, c, {e, g, cone->legs[0]}, "pullback of E-arrow leaves E:");
            }

    for (const Arrow& e : left)
        if (!is_epi(c, e))
            violate(rep.properness, c, {e}, "E-arrow not epi:");
    for (const Arrow& m : right)
        if (!is_mono(c, m))
            violate(rep.properness, c, {m}, "M-arrow not mono:");
    return rep;
}

}  // namespace relcheck
