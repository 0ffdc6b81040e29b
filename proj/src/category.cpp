#include "relcheck/category.hpp"

#include "relcheck/limits.hpp"

#include <algorithm>

namespace relcheck {

bool Category::is_object(int x) const
{
    auto obs = objects();
    return std::find(obs.begin(), obs.end(), x) != obs.end();
}

std::uint64_t Category::hom_count(int a, int b) const
{
    return hom(a, b).size();
}

std::optional<LimitCone> Category::terminal() const
{
    return find_limit(*this, LimitDiagram{LimitShape::terminal});
}

std::optional<LimitCone> Category::product(int a, int b) const
{
    LimitDiagram d;
    d.shape = LimitShape::product;
    d.a = a;
    d.b = b;
    return find_limit(*this, d);
}

std::optional<LimitCone> Category::pullback(const Arrow& f, const Arrow& g) const
{
    LimitDiagram d;
    d.shape = LimitShape::pullback;
    d.f = f;
    d.g = g;
    return find_limit(*this, d);
}

std::optional<Arrow> Category::mediate(const LimitCone& cone, std::span<const Arrow> legs) const
{
    if (legs.size() != cone.legs.size() || legs.empty())
        return std::nullopt;
    const int x = legs[0].src;
    for (const Arrow& u : hom(x, cone.apex)) {
        bool ok = true;
        for (std::size_t i = 0; i < legs.size() && ok; ++i)
            ok = compose(cone.legs[i], u) == legs[i];
        if (ok)
            return u;
    }
    return std::nullopt;
}

std::optional<Arrow> Category::lift(const Arrow& h1, const Arrow& m1,
                                    const Arrow* h2, const Arrow* m2) const
{
    if (h1.tgt != m1.tgt)
        return std::nullopt;
    if (h2 && (h2->src != h1.src || !m2 || m2->src != m1.src || h2->tgt != m2->tgt))
        return std::nullopt;
    for (const Arrow& u : hom(h1.src, m1.src)) {
        if (compose(m1, u) != h1)
            continue;
        if (h2 && compose(*m2, u) != *h2)
            continue;
        return u;
    }
    return std::nullopt;
}

std::optional<Arrow> Category::pair(int a, int b, const Arrow& f, const Arrow& g) const
{
    if (f.tgt != a || g.tgt != b || f.src != g.src)
        return std::nullopt;
    auto cone = product(a, b);
    if (!cone)
        return std::nullopt;
    const Arrow legs[2] = {f, g};
    return mediate(*cone, legs);
}

std::optional<Arrow> Category::product_arrow(const Arrow& f, const Arrow& g) const
{
    auto dom = product(f.src, g.src);
    auto cod = product(f.tgt, g.tgt);
    if (!dom || !cod)
        return std::nullopt;
    const Arrow legs[2] = {compose(f, dom->legs[0]), compose(g, dom->legs[1])};
    return mediate(*cod, legs);
}

std::string describe(const Category& c, const Arrow& f)
{
    return c.arrow_name(f);
}

}  // namespace relcheck
