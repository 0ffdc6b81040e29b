#include "relcheck/finite_category.hpp"

#include <sstream>

namespace relcheck {

int FiniteCategory::add_object(std::string name)
{
    const int id = object_count();
    object_index_.emplace(name, id);
    object_names_.push_back(std::move(name));
    identities_.push_back(-1);
    dirty_ = true;
    return id;
}

int FiniteCategory::add_morphism(std::string name, int src, int tgt)
{
    if (src < 0 || src >= object_count() || tgt < 0 || tgt >= object_count())
        throw UnknownIdError("morphism " + name + " has an unknown endpoint");
    const int id = morphism_count();
    morphism_index_.emplace(name, id);
    morphisms_.push_back({std::move(name), src, tgt});
    dirty_ = true;
    return id;
}

void FiniteCategory::set_identity(int object, int morphism)
{
    if (object < 0 || object >= object_count())
        throw UnknownIdError("unknown object id " + std::to_string(object));
    const Morphism& m = this->morphism(morphism);
    if (m.src != object || m.tgt != object)
        throw BoundaryError("identity " + m.name + " is not an endomorphism of " + object_names_[object]);
    identities_[object] = morphism;
    dirty_ = true;
}

void FiniteCategory::set_composite(int g, int f, int h)
{
    const Morphism& mg = morphism(g);
    const Morphism& mf = morphism(f);
    const Morphism& mh = morphism(h);
    if (mf.tgt != mg.src)
        throw BoundaryError("compose " + mg.name + " " + mf.name + ": not composable");
    if (mh.src != mf.src || mh.tgt != mg.tgt)
        throw BoundaryError("compose " + mg.name + " " + mf.name + " = " + mh.name + ": wrong endpoints");
    composites_[{g, f}] = h;
    dirty_ = true;
}

const FiniteCategory::Morphism& FiniteCategory::morphism(int id) const
{
    if (id < 0 || id >= morphism_count())
        throw UnknownIdError("unknown morphism id " + std::to_string(id));
    return morphisms_[static_cast<std::size_t>(id)];
}

Arrow FiniteCategory::arrow(int id) const
{
    const Morphism& m = morphism(id);
    return Arrow{m.src, m.tgt, static_cast<std::uint64_t>(id)};
}

int FiniteCategory::id(const Arrow& f) const
{
    const int i = static_cast<int>(f.code);
    if (!valid(f))
        throw UnknownIdError("arrow does not belong to this category");
    return i;
}

int FiniteCategory::identity_id(int object) const
{
    if (object < 0 || object >= object_count())
        throw UnknownIdError("unknown object id " + std::to_string(object));
    return identities_[static_cast<std::size_t>(object)];
}

void FiniteCategory::ensure_tables() const
{
    if (!dirty_)
        return;
    const std::size_t n = morphisms_.size();
    table_.assign(n * n, -1);
    for (const auto& [key, h] : composites_)
        table_[static_cast<std::size_t>(key.first) * n + static_cast<std::size_t>(key.second)] = h;
    homs_.assign(static_cast<std::size_t>(object_count() * object_count()), {});
    for (std::size_t i = 0; i < n; ++i) {
        const Morphism& m = morphisms_[i];
        homs_[static_cast<std::size_t>(m.src * object_count() + m.tgt)].push_back(static_cast<int>(i));
    }
    dirty_ = false;
}

int FiniteCategory::composite_id(int g, int f) const
{
    ensure_tables();
    const std::size_t n = morphisms_.size();
    if (g < 0 || f < 0 || static_cast<std::size_t>(g) >= n || static_cast<std::size_t>(f) >= n)
        throw UnknownIdError("unknown morphism id in composite");
    return table_[static_cast<std::size_t>(g) * n + static_cast<std::size_t>(f)];
}

std::string FiniteCategory::validate() const
{
    ensure_tables();
    std::ostringstream err;
    for (int x = 0; x < object_count(); ++x)
        if (identities_[static_cast<std::size_t>(x)] < 0) {
            err << "object " << object_names_[static_cast<std::size_t>(x)] << " has no identity";
            return err.str();
        }
    const int n = morphism_count();
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
            const bool composable = morphisms_[static_cast<std::size_t>(f)].tgt == morphisms_[static_cast<std::size_t>(g)].src;
            const int h = composite_id(g, f);
            if (composable && h < 0) {
                err << "missing composite " << morphisms_[static_cast<std::size_t>(g)].name << " o "
                    << morphisms_[static_cast<std::size_t>(f)].name;
                return err.str();
            }
            if (!composable && h >= 0) {
                err << "composite defined for non-composable pair " << morphisms_[static_cast<std::size_t>(g)].name
                    << " o " << morphisms_[static_cast<std::size_t>(f)].name;
                return err.str();
            }
        }
    for (int f = 0; f < n; ++f) {
        const Morphism& m = morphisms_[static_cast<std::size_t>(f)];
        if (composite_id(identities_[static_cast<std::size_t>(m.tgt)], f) != f ||
            composite_id(f, identities_[static_cast<std::size_t>(m.src)]) != f) {
            err << "identity law fails at " << m.name;
            return err.str();
        }
    }
    for (int f = 0; f < n; ++f) {
        const Morphism& mf = morphisms_[static_cast<std::size_t>(f)];
        for (int g = 0; g < n; ++g) {
            const Morphism& mg = morphisms_[static_cast<std::size_t>(g)];
            if (mg.src != mf.tgt)
                continue;
            const int gf = composite_id(g, f);
            for (int h = 0; h < n; ++h) {
                if (morphisms_[static_cast<std::size_t>(h)].src != mg.tgt)
                    continue;
                if (composite_id(h, gf) != composite_id(composite_id(h, g), f)) {
                    err << "associativity fails at (" << morphisms_[static_cast<std::size_t>(h)].name << ", " << mg.name
                        << ", " << mf.name << ")";
                    return err.str();
                }
            }
        }
    }
    return {};
}

std::optional<int> FiniteCategory::find_object(std::string_view name) const
{
    auto it = object_index_.find(name);
    if (it == object_index_.end())
        return std::nullopt;
    return it->second;
}

std::optional<int> FiniteCategory::find_morphism(std::string_view name) const
{
    auto it = morphism_index_.find(name);
    if (it == morphism_index_.end())
        return std::nullopt;
    return it->second;
}

std::vector<int> FiniteCategory::objects() const
{
    std::vector<int> out(static_cast<std::size_t>(object_count()));
    for (int i = 0; i < object_count(); ++i)
        out[static_cast<std::size_t>(i)] = i;
    return out;
}

Arrow FiniteCategory::identity(int x) const
{
    const int id = identity_id(x);
    if (id < 0)
        throw UnknownIdError("object " + object_name(x) + " has no identity");
    return arrow(id);
}

Arrow FiniteCategory::compose(const Arrow& g, const Arrow& f) const
{
    if (f.tgt != g.src)
        throw BoundaryError("compose: " + arrow_name(g) + " o " + arrow_name(f) + " is not composable");
    const int h = composite_id(id(g), id(f));
    if (h < 0)
        throw BoundaryError("compose: table has no entry for " + arrow_name(g) + " o " + arrow_name(f));
    return arrow(h);
}

std::vector<Arrow> FiniteCategory::hom(int a, int b) const
{
    ensure_tables();
    std::vector<Arrow> out;
    if (a < 0 || b < 0 || a >= object_count() || b >= object_count())
        return out;
    for (int i : homs_[static_cast<std::size_t>(a * object_count() + b)])
        out.push_back(arrow(i));
    return out;
}

std::uint64_t FiniteCategory::hom_count(int a, int b) const
{
    ensure_tables();
    if (a < 0 || b < 0 || a >= object_count() || b >= object_count())
        return 0;
    return homs_[static_cast<std::size_t>(a * object_count() + b)].size();
}

bool FiniteCategory::valid(const Arrow& f) const
{
    if (f.code >= morphisms_.size())
        return false;
    const Morphism& m = morphisms_[static_cast<std::size_t>(f.code)];
    return m.src == f.src && m.tgt == f.tgt;
}

std::string FiniteCategory::object_name(int x) const
{
    if (x < 0 || x >= object_count())
        return "?" + std::to_string(x);
    return object_names_[static_cast<std::size_t>(x)];
}

std::string FiniteCategory::arrow_name(const Arrow& f) const
{
    if (!valid(f))
        return "?";
    return morphisms_[static_cast<std::size_t>(f.code)].name;
}

std::optional<Arrow> FiniteCategory::parse_arrow(std::string_view text) const
{
    auto id = find_morphism(text);
    if (!id)
        return std::nullopt;
    return arrow(*id);
}

std::optional<int> FiniteCategory::parse_object(std::string_view text) const
{
    return find_object(text);
}

FiniteCategory chain_poset(int n)
{
    FiniteCategory c;
    for (int i = 0; i < n; ++i)
        c.add_object(std::string(1, static_cast<char>('a' + i)));
    std::vector<std::vector<int>> le(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            std::string name = i == j ? "1" + c.object_name(i) : c.object_name(i) + c.object_name(j);
            le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c.add_morphism(name, i, j);
        }
    for (int i = 0; i < n; ++i)
        c.set_identity(i, le[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k)
                c.set_composite(le[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)],
                                le[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                le[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
    return c;
}

}  // namespace relcheck
