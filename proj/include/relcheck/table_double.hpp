#pragma once

#include "relcheck/double_category.hpp"
#include "relcheck/rel_double.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace relcheck {

// A finite double category presented by tables over a category D0.
//
//   explicit  cells are named and every composite is looked up in a table
//   thin      at most one cell per boundary; the file lists which boundaries
//             carry a cell and every composite is the cell on the composite
//             boundary
//   spans     proarrows are listed spans over D0, cells are all mediating
//             arrows, and the composite of two spans is their pullback,
//             identified with a listed span (absent when none matches)
//
// Pro::code indexes the proarrow list. Cell::code is the cell id (explicit),
// 0 (thin) or the mediating arrow's code (spans).
class TableDouble : public DoubleCategory {
public:
    enum class Mode { explicit_cells, thin, spans };

    struct ProEntry {
        std::string name;
        int src = 0;
        int tgt = 0;
        Span span;  // spans mode only
    };

    struct CellEntry {
        std::string name;
        Arrow left;
        Arrow right;
        int top = 0;
        int bottom = 0;
    };

    TableDouble(Mode mode, std::shared_ptr<const Category> d0, std::string d0_spec);

    Mode mode() const { return mode_; }
    // "finset(N)" or "inline"; how the D0 part is written out.
    const std::string& d0_spec() const { return d0_spec_; }
    void set_name(std::string n) { name_ = std::move(n); }
    void set_support(std::vector<int> objects);

    int add_proarrow(std::string name, int src, int tgt);
    int add_span(std::string name, const Span& s);
    void set_unit(int object, int pro);
    void set_hcomp(int p, int q, int r);
    // Thin mode.
    void add_thin_cell(const Arrow& left, const Arrow& right, int top, int bottom);
    // Explicit mode.
    int add_cell(std::string name, const Arrow& left, const Arrow& right, int top, int bottom);
    void set_vcomp(int a, int b, int c);
    void set_hcomp_cell(int a, int b, int c);
    void set_identity_cell(int pro, int cell);
    void set_unit_cell(const Arrow& f, int cell);
    void set_associator(int p, int q, int r, int cell);
    void set_left_unitor(int m, int cell);
    void set_right_unitor(int m, int cell);

    // Structural checks on the tables. `deep` adds closure of the composites
    // and the category laws for cells, which is quadratic in the cell count.
    // Empty string when valid.
    std::string validate(bool deep = false) const;

    // Read access for emission and tests.
    const std::vector<ProEntry>& pro_entries() const { return pros_; }
    const std::vector<CellEntry>& cell_entries() const { return cells_; }
    const std::set<std::tuple<Arrow, Arrow, int, int>>& thin_cells() const { return thin_; }
    const std::map<int, int>& unit_table() const { return units_; }
    const std::map<std::pair<int, int>, int>& hcomp_table() const { return hcomp_; }
    const std::map<std::pair<int, int>, int>& vcomp_cell_table() const { return vcell_; }
    const std::map<std::pair<int, int>, int>& hcomp_cell_table() const { return hcell_; }
    const std::map<int, int>& identity_cell_table() const { return idcell_; }
    const std::map<Arrow, int>& unit_cell_table() const { return unitcell_; }
    const std::map<std::tuple<int, int, int>, int>& associator_table() const { return assoc_; }
    const std::map<int, int>& left_unitor_table() const { return lunit_; }
    const std::map<int, int>& right_unitor_table() const { return runit_; }
    const std::vector<int>& declared_support() const { return support_; }

    Pro pro(int id) const;
    int pro_id(const Pro& p) const;
    Span span(const Pro& p) const;
    std::optional<Cell> cell_by_id(int id) const;
    int cell_id(const Cell& c) const;

    const Category& d0() const override { return *d0_; }
    std::shared_ptr<const Category> d0_ptr() const { return d0_; }
    std::string name() const override { return name_; }
    std::vector<int> support() const override;

    std::vector<Pro> proarrows(int a, int b) const override;
    std::vector<Cell> cells(const Arrow& left, const Arrow& right, const Pro& top, const Pro& bottom) const override;
    Cell vcomp(const Cell& a, const Cell& b) const override;
    std::optional<Pro> hcomp(const Pro& p, const Pro& q) const override;
    std::optional<Cell> hcomp(const Cell& a, const Cell& b) const override;
    std::optional<Pro> unit(int x) const override;
    std::optional<Cell> unit_cell(const Arrow& f) const override;
    Cell identity_cell(const Pro& p) const override;
    std::optional<Cell> associator(const Pro& p, const Pro& q, const Pro& r) const override;
    std::optional<Cell> left_unitor(const Pro& m) const override;
    std::optional<Cell> right_unitor(const Pro& m) const override;
    std::string pro_name(const Pro& p) const override;
    std::optional<Pro> parse_pro(std::string_view text) const override;
    std::string cell_name(const Cell& c) const override;

    std::optional<TabulatorData> tabulator_hint(const Pro& p) const override;
    std::optional<ProductData> local_product_hint(const Pro& m, const Pro& n) const override;

private:
    struct Cone {
        int r = 0;    // the listed composite
        Arrow u, v;   // apex(r) -> apex(p), apex(r) -> apex(q), a pullback cone
    };

    void check_mode(Mode m, const char* what) const;
    std::optional<int> find_span(const Span& s, Arrow* iso) const;
    const Cone* cone(int p, int q) const;
    std::optional<Cell> span_cell(const Arrow& left, const Arrow& right, const Pro& top, const Pro& bottom,
                                  const Arrow& theta) const;
    std::optional<Cell> unique_cell(const Arrow& left, const Arrow& right, const Pro& top, const Pro& bottom) const;

    Mode mode_;
    std::shared_ptr<const Category> d0_;
    std::string d0_spec_;
    std::string name_ = "table";
    std::vector<int> support_;

    std::vector<ProEntry> pros_;
    std::map<std::string, int, std::less<>> pro_index_;
    std::map<std::pair<int, int>, std::vector<int>> by_ends_;
    std::map<int, int> units_;
    std::map<std::pair<int, int>, int> hcomp_;

    std::set<std::tuple<Arrow, Arrow, int, int>> thin_;

    std::vector<CellEntry> cells_;
    std::map<std::tuple<Arrow, Arrow, int, int>, std::vector<int>> by_boundary_;
    std::map<std::pair<int, int>, int> vcell_;
    std::map<std::pair<int, int>, int> hcell_;
    std::map<int, int> idcell_;
    std::map<Arrow, int> unitcell_;
    std::map<std::tuple<int, int, int>, int> assoc_;
    std::map<int, int> lunit_;
    std::map<int, int> runit_;

    mutable std::map<std::pair<int, int>, std::optional<Cone>> cones_;
};

// A thin table listing the given proarrows of a thin double category `d`
// (every boundary with a cell, composites that stay in the list). D0 is `d0`,
// which must share arrow handles with d.d0().
std::unique_ptr<TableDouble> tabulate_thin(const DoubleCategory& d, std::shared_ptr<const Category> d0,
                                           std::string d0_spec, const std::vector<Pro>& listed,
                                           std::vector<int> support);

// Rel(FinSet) with relations on sizes <= n, presented as a thin table over
// finset(n*n) together with the units of the larger sets.
std::unique_ptr<TableDouble> rel_finset_table(int n);
// All spans between sizes <= n with apex <= max_apex, up to isomorphism, over
// finset(max_apex), plus the units of the sizes above n.
std::unique_ptr<TableDouble> span_control(int n = 2, int max_apex = 4);
// One object, one arrow, one proarrow y with cells 1 and an idempotent e.
std::unique_ptr<TableDouble> unit_pure_control();
// Rel of the 2-chain a <= b with the relation a -|-> b deleted.
std::unique_ptr<TableDouble> deleted_companion_control();
// One object, one arrow, one proarrow, one cell.
std::unique_ptr<TableDouble> trivial_double();

}  // namespace relcheck
