#pragma once

#include "relcheck/double_category.hpp"
#include "relcheck/factorization.hpp"
#include "relcheck/finset.hpp"

#include <map>
#include <memory>
#include <tuple>

namespace relcheck {

struct Span {
    int apex = 0;
    Arrow l;
    Arrow r;
};

// How F-relations A -|-> B are represented as Pro handles.
class RelationCodec {
public:
    virtual ~RelationCodec() = default;
    virtual std::vector<Pro> enumerate(int a, int b) const = 0;
    virtual Span span(const Pro& p) const = 0;
    // The representative of an M-monic span a <- apex -> b; absent when the
    // span is not M-monic or cannot be represented.
    virtual std::optional<Pro> encode(const Span& s) const = 0;
    virtual std::string name(const Pro& p) const = 0;
    virtual std::optional<Pro> parse(std::string_view text) const = 0;
};

// Relations between finite sets as bit matrices. The representative span of a
// relation lists its pairs in row-major order. Relations with more than 64
// cells (the units and tabulator apexes above 8) are interned and Pro::code
// is their index.
class MatrixCodec : public RelationCodec {
public:
    explicit MatrixCodec(int cap) : cap_(cap) {}
    std::vector<Pro> enumerate(int a, int b) const override;
    Span span(const Pro& p) const override;
    std::optional<Pro> encode(const Span& s) const override;
    std::string name(const Pro& p) const override;
    std::optional<Pro> parse(std::string_view text) const override;

    static BoolMatrix matrix(const Pro& p) { return {p.src, p.tgt, p.code}; }
    static Pro pro(const BoolMatrix& m) { return {m.rows, m.cols, m.bits}; }

private:
    using Pairs = std::vector<std::pair<int, int>>;
    Pairs pairs(const Pro& p) const;
    Pro intern(int a, int b, Pairs pairs) const;

    int cap_;
    mutable std::vector<Pairs> big_;
    mutable std::map<std::tuple<int, int, Pairs>, std::uint64_t> big_index_;
};

// Relations in a table category: M-monic spans up to isomorphism, found by
// search. Pro::code indexes the list for the endpoint pair.
class SearchCodec : public RelationCodec {
public:
    SearchCodec(const Category& c, const FactorizationSystem& fs);
    std::vector<Pro> enumerate(int a, int b) const override;
    Span span(const Pro& p) const override;
    std::optional<Pro> encode(const Span& s) const override;
    std::string name(const Pro& p) const override;
    std::optional<Pro> parse(std::string_view text) const override;

private:
    bool monic(const Span& s) const;
    const Category* c_;
    const FactorizationSystem* fs_;
    std::map<std::pair<int, int>, std::vector<Span>> spans_;
};

// Rel(C;F): proarrows are F-relations, cells are mediating arrows of apexes,
// composition is pullback followed by image.
class RelDouble : public DoubleCategory {
public:
    RelDouble(std::shared_ptr<const Category> c, std::shared_ptr<const FactorizationSystem> fs,
              std::unique_ptr<RelationCodec> codec);

    const Category& d0() const override { return *c_; }
    const FactorizationSystem& fs() const { return *fs_; }
    std::shared_ptr<const FactorizationSystem> fs_ptr() const { return fs_; }
    std::shared_ptr<const Category> d0_ptr() const { return c_; }
    const RelationCodec& codec() const { return *codec_; }
    std::string name() const override;

    Span span(const Pro& p) const { return codec_->span(p); }
    std::optional<Pro> encode(const Span& s) const { return codec_->encode(s); }
    Arrow mediator(const Cell& c) const;

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
    std::string pro_name(const Pro& p) const override { return codec_->name(p); }
    std::optional<Pro> parse_pro(std::string_view text) const override { return codec_->parse(text); }
    std::string cell_name(const Cell& c) const override;

    std::optional<CompanionData> companion_hint(const Arrow& f) const override;
    std::optional<CompanionData> conjoint_hint(const Arrow& f) const override;
    std::optional<TabulatorData> tabulator_hint(const Pro& p) const override;
    std::optional<CartesianCellData> restriction_hint(const Arrow& f, const Pro& n, const Arrow& g) const override;
    std::optional<CartesianCellData> extension_hint(const Arrow& f, const Pro& m, const Arrow& g) const override;
    std::optional<ProductData> local_product_hint(const Pro& m, const Pro& n) const override;
    std::optional<ProductData> cartesian_product_hint(const Pro& m, const Pro& n) const override;

    // The image of the span (l, r) as a relation: extension of y_apex along (l, r).
    std::optional<Pro> image(int a, int b, const Arrow& l, const Arrow& r) const;
    // Morphisms of relations: the mediator R -> S commuting with legs, if any.
    std::optional<Arrow> relation_morphism(const Pro& r, const Pro& s) const;

private:
    std::optional<Cell> cell(const Arrow& left, const Arrow& right, const Pro& top, const Pro& bottom) const;

    std::shared_ptr<const Category> c_;
    std::shared_ptr<const FactorizationSystem> fs_;
    std::unique_ptr<RelationCodec> codec_;
};

class InvalidFactorizationSystem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Validates (C, F) as proper and stable, then builds Rel(C;F); matrix codec
// for FinSetCategory, search codec otherwise.
std::unique_ptr<RelDouble> build_rel_double(std::shared_ptr<const Category> c,
                                            std::shared_ptr<const FactorizationSystem> fs, bool validate = true);
// Rel(FinSet) with universe 0..cap and (surjections, injections).
std::unique_ptr<RelDouble> rel_finset(int cap);

}  // namespace relcheck
