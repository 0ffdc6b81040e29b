#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace relcheck {

// An arrow handle. `code` is backend specific: a table id for explicit
// categories, a packed function table for FinSet.
struct Arrow {
    int src = 0;
    int tgt = 0;
    std::uint64_t code = 0;

    friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

struct ArrowHash {
    std::size_t operator()(const Arrow& a) const noexcept
    {
        std::uint64_t h = a.code * 0x9E3779B97F4A7C15ULL;
        h ^= (static_cast<std::uint64_t>(a.src) << 32) ^ static_cast<std::uint64_t>(a.tgt);
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

class BoundaryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownIdError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A construction needed an object past the finite universe.
class UniverseError : public UnknownIdError {
public:
    using UnknownIdError::UnknownIdError;
};

// Diagram shapes find_limit understands.
enum class LimitShape { terminal, product, pullback };

struct LimitDiagram {
    LimitShape shape = LimitShape::terminal;
    int a = 0, b = 0;       // product factors
    Arrow f{}, g{};         // pullback corner f: A -> C <- B: g
};

struct LimitCone {
    int apex = 0;
    std::vector<Arrow> legs;
    LimitDiagram diagram;
};

class Category {
public:
    virtual ~Category() = default;

    // The enumerable universe: searches and universal-property checks range
    // over these objects.
    virtual std::vector<int> objects() const = 0;
    // Objects that constructions may produce. Defaults to the universe.
    virtual bool is_object(int x) const;

    virtual Arrow identity(int x) const = 0;
    // g after f; throws BoundaryError when tgt(f) != src(g).
    virtual Arrow compose(const Arrow& g, const Arrow& f) const = 0;
    virtual std::vector<Arrow> hom(int a, int b) const = 0;
    virtual std::uint64_t hom_count(int a, int b) const;
    virtual bool valid(const Arrow& f) const = 0;

    virtual std::string object_name(int x) const = 0;
    virtual std::string arrow_name(const Arrow& f) const = 0;
    virtual std::optional<Arrow> parse_arrow(std::string_view text) const = 0;
    virtual std::optional<int> parse_object(std::string_view text) const = 0;

    // Limit provider. Defaults search the universe (see limits.hpp); element
    // backends override with direct constructions.
    virtual std::optional<LimitCone> terminal() const;
    virtual std::optional<LimitCone> product(int a, int b) const;
    virtual std::optional<LimitCone> pullback(const Arrow& f, const Arrow& g) const;
    // The unique x with cone.legs[i] o x == legs[i] for all i.
    virtual std::optional<Arrow> mediate(const LimitCone& cone, std::span<const Arrow> legs) const;
    // Least u with m1 o u == h1 and m2 o u == h2 (m2/h2 optional).
    virtual std::optional<Arrow> lift(const Arrow& h1, const Arrow& m1,
                                      const Arrow* h2 = nullptr, const Arrow* m2 = nullptr) const;

    // Convenience built on the provider.
    std::optional<Arrow> pair(int a, int b, const Arrow& f, const Arrow& g) const;
    std::optional<Arrow> product_arrow(const Arrow& f, const Arrow& g) const;
    bool is_identity(const Arrow& f) const { return f.src == f.tgt && f == identity(f.src); }
};

std::string describe(const Category& c, const Arrow& f);

}  // namespace relcheck
