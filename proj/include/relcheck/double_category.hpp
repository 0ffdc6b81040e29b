#pragma once

#include "relcheck/category.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace relcheck {

// A proarrow src -|-> tgt. `code` is backend specific.
struct Pro {
    int src = 0;
    int tgt = 0;
    std::uint64_t code = 0;
    friend auto operator<=>(const Pro&, const Pro&) = default;
};

// A square
//
//        top
//     A -|-> B
//   left     right
//     X -|-> Y
//       bottom
//
// `code` identifies the cell among those with the same boundary.
struct Cell {
    Arrow left;
    Arrow right;
    Pro top;
    Pro bottom;
    std::uint64_t code = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct CompanionData {
    Pro pro;
    Cell unit;    // companion f_!: y_A => f_! along (id, f); conjoint f^*: y_A => f^* along (f, id)
    Cell counit;  // companion: f_! => y_B along (f, id); conjoint: f^* => y_B along (id, f)
};

struct TabulatorData {
    int apex = 0;
    Arrow l;
    Arrow r;
    Cell counit;  // y_apex => p along (l, r)
};

struct CartesianCellData {
    Pro pro;
    Cell cell;
};

struct ProductData {
    Pro pro;
    Cell first;
    Cell second;
};

class DoubleCategory {
public:
    virtual ~DoubleCategory() = default;

    virtual const Category& d0() const = 0;
    virtual std::string name() const { return "double"; }

    virtual std::vector<Pro> proarrows(int a, int b) const = 0;
    virtual std::vector<Cell> cells(const Arrow& left, const Arrow& right, const Pro& top, const Pro& bottom) const = 0;

    // a on top of b.
    virtual Cell vcomp(const Cell& a, const Cell& b) const = 0;
    // Diagrammatic: p : A -|-> B, q : B -|-> C gives A -|-> C.
    virtual std::optional<Pro> hcomp(const Pro& p, const Pro& q) const = 0;
    virtual std::optional<Cell> hcomp(const Cell& a, const Cell& b) const = 0;

    virtual std::optional<Pro> unit(int x) const = 0;
    virtual std::optional<Cell> unit_cell(const Arrow& f) const = 0;
    virtual Cell identity_cell(const Pro& p) const = 0;

    // (p q) r => p (q r), y m => m, m y => m.
    virtual std::optional<Cell> associator(const Pro& p, const Pro& q, const Pro& r) const = 0;
    virtual std::optional<Cell> left_unitor(const Pro& m) const = 0;
    virtual std::optional<Cell> right_unitor(const Pro& m) const = 0;

    virtual std::string pro_name(const Pro& p) const = 0;
    virtual std::optional<Pro> parse_pro(std::string_view text) const = 0;
    virtual std::string cell_name(const Cell& c) const = 0;

    // Structure a backend knows directly. Every hint is re-verified by the
    // generic operations before use; absent hints fall back to search.
    virtual std::optional<CompanionData> companion_hint(const Arrow&) const { return std::nullopt; }
    virtual std::optional<CompanionData> conjoint_hint(const Arrow&) const { return std::nullopt; }
    virtual std::optional<TabulatorData> tabulator_hint(const Pro&) const { return std::nullopt; }
    virtual std::optional<CartesianCellData> restriction_hint(const Arrow&, const Pro&, const Arrow&) const
    {
        return std::nullopt;
    }
    virtual std::optional<CartesianCellData> extension_hint(const Arrow&, const Pro&, const Arrow&) const
    {
        return std::nullopt;
    }
    virtual std::optional<ProductData> local_product_hint(const Pro&, const Pro&) const { return std::nullopt; }
    virtual std::optional<ProductData> cartesian_product_hint(const Pro&, const Pro&) const { return std::nullopt; }

    // Objects whose proarrows and arrows the audit quantifies over. The window
    // (all of d0's universe) may be larger: it also holds apexes and products.
    virtual std::vector<int> support() const { return window(); }

    bool has_unit(int x) const { return unit(x).has_value(); }
    std::vector<int> window() const { return d0().objects(); }
    std::vector<Pro> all_proarrows() const;
    // The cell with this boundary whose cell_name is `name`.
    std::optional<Cell> find_cell(const Arrow& left, const Arrow& right, const Pro& top, const Pro& bottom,
                                  std::string_view name) const;
};

}  // namespace relcheck
