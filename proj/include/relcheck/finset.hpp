#pragma once

#include "relcheck/factorization.hpp"
#include "relcheck/finite_category.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace relcheck {

// Sets are sizes 0..max_finset; a function n -> m packs n entries of 4 bits,
// entry 0 in the most significant position so that numeric order of codes is
// lexicographic order of tables.
inline constexpr int max_finset = 16;

Arrow make_function(int n, int m, std::span<const int> table);
std::vector<int> function_table(const Arrow& f);
inline int apply(const Arrow& f, int i)
{
    return static_cast<int>((f.code >> (4 * (f.src - 1 - i))) & 0xF);
}
bool is_surjective(const Arrow& f);
bool is_injective(const Arrow& f);
// "[2,1]:2->2", entries printed 1-based.
std::string function_name(const Arrow& f);
std::optional<Arrow> parse_function(std::string_view text);

// FinSet with universe {0..cap}. Limits are built element-wise for any size up
// to max_finset, so constructions may leave the universe.
class FinSetCategory : public Category {
public:
    explicit FinSetCategory(int cap);
    int cap() const { return cap_; }

    std::vector<int> objects() const override;
    bool is_object(int x) const override { return x >= 0 && x <= max_finset; }
    Arrow identity(int x) const override;
    Arrow compose(const Arrow& g, const Arrow& f) const override;
    std::vector<Arrow> hom(int a, int b) const override;
    std::uint64_t hom_count(int a, int b) const override;
    bool valid(const Arrow& f) const override;
    std::string object_name(int x) const override { return std::to_string(x); }
    std::string arrow_name(const Arrow& f) const override { return function_name(f); }
    std::optional<Arrow> parse_arrow(std::string_view text) const override;
    std::optional<int> parse_object(std::string_view text) const override;

    std::optional<LimitCone> terminal() const override;
    std::optional<LimitCone> product(int a, int b) const override;
    std::optional<LimitCone> pullback(const Arrow& f, const Arrow& g) const override;
    std::optional<Arrow> mediate(const LimitCone& cone, std::span<const Arrow> legs) const override;
    std::optional<Arrow> lift(const Arrow& h1, const Arrow& m1, const Arrow* h2 = nullptr,
                              const Arrow* m2 = nullptr) const override;

private:
    int cap_;
};

// The same category as explicit tables (morphism names as function_name).
FiniteCategory finset_category(int n);

// A relation rows x cols as a row-major bit set (rows * cols <= 64).
struct BoolMatrix {
    int rows = 0;
    int cols = 0;
    std::uint64_t bits = 0;

    static BoolMatrix empty(int r, int c) { return {r, c, 0}; }
    static BoolMatrix full(int r, int c);
    static BoolMatrix diagonal(int n);

    bool at(int r, int c) const { return (bits >> (r * cols + c)) & 1U; }
    void set(int r, int c, bool v = true);
    int count() const;
    BoolMatrix transpose() const;
    // "{(1,1),(1,2)}" with 1-based pairs in row-major order.
    std::string str() const;

    friend auto operator<=>(const BoolMatrix&, const BoolMatrix&) = default;
};

// (a, c) holds iff some b has R(a, b) and S(b, c).
BoolMatrix matrix_compose(const BoolMatrix& r, const BoolMatrix& s);
BoolMatrix matrix_meet(const BoolMatrix& r, const BoolMatrix& s);
bool matrix_leq(const BoolMatrix& r, const BoolMatrix& s);
// The relation {(l k, r k)} of a span of functions.
BoolMatrix matrix_of_span(const Arrow& l, const Arrow& r);
std::optional<BoolMatrix> parse_matrix(std::string_view text, int rows, int cols);

// Image factorization; the image lists values in order of first preimage.
Factorization finset_factorize(const Arrow& f);

// (surjections, injections) on FinSetCategory. Surjections factor as (f, id),
// everything else through its image.
class EpiMonoFS : public FactorizationSystem {
public:
    explicit EpiMonoFS(const Category& c) : c_(&c) {}
    const Category& category() const override { return *c_; }
    bool in_left(const Arrow& f) const override { return is_surjective(f); }
    bool in_right(const Arrow& f) const override { return is_injective(f); }
    std::optional<Factorization> factorize(const Arrow& f) const override;
    std::string name() const override { return "epimono"; }

private:
    const Category* c_;
};

}  // namespace relcheck
