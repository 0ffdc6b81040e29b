#include "relcheck/limits.hpp"

#include <set>
#include <sstream>

namespace relcheck {

namespace {

std::uint64_t cone_count(const Category& c, const LimitDiagram& d, int x)
{
    switch (d.shape) {
    case LimitShape::terminal:
        return 1;
    case LimitShape::product:
        return c.hom_count(x, d.a) * c.hom_count(x, d.b);
    case LimitShape::pullback:
        return cones_from(c, d, x).size();
    }
    return 0;
}

// Every arrow into the apex induces a distinct cone, and the counts agree.
bool universal(const Category& c, const LimitCone& cone, const std::vector<int>& universe)
{
    for (int x : universe) {
        if (c.hom_count(x, cone.apex) != cone_count(c, cone.diagram, x))
            return false;
        std::set<std::vector<Arrow>> seen;
        for (const Arrow& u : c.hom(x, cone.apex)) {
            std::vector<Arrow> induced;
            induced.reserve(cone.legs.size());
            for (const Arrow& l : cone.legs)
                induced.push_back(c.compose(l, u));
            if (!seen.insert(std::move(induced)).second)
                return false;
        }
    }
    return true;
}

bool commutes(const Category& c, const LimitDiagram& d, const std::vector<Arrow>& legs)
{
    if (d.shape != LimitShape::pullback)
        return true;
    return c.compose(d.f, legs[0]) == c.compose(d.g, legs[1]);
}

}  // namespace

std::vector<std::vector<Arrow>> cones_from(const Category& c, const LimitDiagram& d, int x)
{
    std::vector<std::vector<Arrow>> out;
    switch (d.shape) {
    case LimitShape::terminal:
        out.push_back({});
        break;
    case LimitShape::product:
        for (const Arrow& u : c.hom(x, d.a))
            for (const Arrow& v : c.hom(x, d.b))
                out.push_back({u, v});
        break;
    case LimitShape::pullback: {
        auto hb = c.hom(x, d.g.src);
        for (const Arrow& u : c.hom(x, d.f.src)) {
            const Arrow fu = c.compose(d.f, u);
            for (const Arrow& v : hb)
                if (c.compose(d.g, v) == fu)
                    out.push_back({u, v});
        }
        break;
    }
    }
    return out;
}

std::optional<LimitCone> find_limit(const Category& c, const LimitDiagram& d)
{
    if (d.shape == LimitShape::pullback && d.f.tgt != d.g.tgt)
        throw BoundaryError("pullback of arrows with different codomains");
    const auto universe = c.objects();
    std::vector<std::uint64_t> counts;
    counts.reserve(universe.size());
    for (int x : universe)
        counts.push_back(cone_count(c, d, x));
    for (int p : universe) {
        bool plausible = true;
        for (std::size_t i = 0; i < universe.size() && plausible; ++i)
            plausible = c.hom_count(universe[i], p) == counts[i];
        if (!plausible)
            continue;
        for (auto& legs : cones_from(c, d, p)) {
            LimitCone cone{p, std::move(legs), d};
            if (universal(c, cone, universe))
                return cone;
        }
    }
    return std::nullopt;
}

std::string verify_limit(const Category& c, const LimitCone& cone)
{
    const LimitDiagram& d = cone.diagram;
    const std::size_t arity = d.shape == LimitShape::terminal ? 0 : 2;
    if (cone.legs.size() != arity)
        return "cone has the wrong number of legs";
    if (arity == 2) {
        const int a = d.shape == LimitShape::product ? d.a : d.f.src;
        const int b = d.shape == LimitShape::product ? d.b : d.g.src;
        if (cone.legs[0].src != cone.apex || cone.legs[1].src != cone.apex || cone.legs[0].tgt != a ||
            cone.legs[1].tgt != b)
            return "legs have the wrong endpoints";
        if (!commutes(c, d, cone.legs))
            return "cone does not commute";
    }
    for (int x : c.objects()) {
        const auto expected = cone_count(c, d, x);
        const auto got = c.hom_count(x, cone.apex);
        if (got != expected) {
            std::ostringstream os;
            os << "object " << c.object_name(x) << " has " << got << " arrows into the apex but " << expected
               << " cones";
            return os.str();
        }
    }
    if (!universal(c, cone, c.objects()))
        return "two arrows into the apex induce the same cone";
    return {};
}

bool is_mono(const Category& c, const Arrow& f)
{
    for (int x : c.objects()) {
        std::set<Arrow> images;
        for (const Arrow& u : c.hom(x, f.src))
            if (!images.insert(c.compose(f, u)).second)
                return false;
    }
    return true;
}

bool is_epi(const Category& c, const Arrow& f)
{
    for (int x : c.objects()) {
        std::set<Arrow> images;
        for (const Arrow& u : c.hom(f.tgt, x))
            if (!images.insert(c.compose(u, f)).second)
                return false;
    }
    return true;
}

std::optional<Arrow> inverse(const Category& c, const Arrow& f)
{
    const Arrow ida = c.identity(f.src);
    const Arrow idb = c.identity(f.tgt);
    for (const Arrow& g : c.hom(f.tgt, f.src))
        if (c.compose(g, f) == ida && c.compose(f, g) == idb)
            return g;
    return std::nullopt;
}

MorphismClass classify_morphism(const Category& c, const Arrow& f)
{
    MorphismClass k;
    k.mono = is_mono(c, f);
    k.epi = is_epi(c, f);
    k.iso = inverse(c, f).has_value();
    return k;
}

}  // namespace relcheck
