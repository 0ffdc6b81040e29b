#pragma once

#include "relcheck/double_category.hpp"

#include <optional>
#include <string>

namespace relcheck {

// Generic double-categorical calculus, usable on any backend. Universal
// properties are tested against the proarrows and arrows of the window.

bool is_globular(const DoubleCategory& d, const Cell& c);
bool is_identity_cell(const DoubleCategory& d, const Cell& c);
std::optional<Cell> cell_inverse(const DoubleCategory& d, const Cell& c);
bool is_invertible(const DoubleCategory& d, const Cell& c);
// An invertible globular cell p => q.
std::optional<Cell> globular_iso(const DoubleCategory& d, const Pro& p, const Pro& q);
bool equivalent(const DoubleCategory& d, const Pro& p, const Pro& q);
std::optional<Cell> unique_globular(const DoubleCategory& d, const Pro& p, const Pro& q);

// Failure descriptions go to *why when given.
bool is_cartesian(const DoubleCategory& d, const Cell& alpha, std::string* why = nullptr);
bool is_opcartesian(const DoubleCategory& d, const Cell& alpha, std::string* why = nullptr);
// gamma: m => n along (h, k) with alpha ; gamma == beta, where alpha: p => m is
// opcartesian and beta: p => n lies along (h o alpha.left, k o alpha.right).
std::optional<Cell> factor_opcartesian(const DoubleCategory& d, const Cell& alpha, const Cell& beta,
                                       const Arrow& h, const Arrow& k);
// gamma: p => m along (h, k) with gamma ; alpha == beta, alpha cartesian.
std::optional<Cell> factor_cartesian(const DoubleCategory& d, const Cell& alpha, const Cell& beta, const Arrow& h,
                                     const Arrow& k);

bool companion_equations(const DoubleCategory& d, const Arrow& f, const CompanionData& c, std::string* why = nullptr);
bool conjoint_equations(const DoubleCategory& d, const Arrow& f, const CompanionData& c, std::string* why = nullptr);
std::optional<CompanionData> find_companion(const DoubleCategory& d, const Arrow& f);
std::optional<CompanionData> find_conjoint(const DoubleCategory& d, const Arrow& f);

std::optional<CartesianCellData> find_restriction(const DoubleCategory& d, const Arrow& f, const Pro& n,
                                                  const Arrow& g);
std::optional<CartesianCellData> find_extension(const DoubleCategory& d, const Arrow& f, const Pro& m,
                                                const Arrow& g);

bool tabulator_universal(const DoubleCategory& d, const Pro& p, const TabulatorData& t, std::string* why = nullptr);
std::optional<TabulatorData> find_tabulator(const DoubleCategory& d, const Pro& p);
// The arrow u : X -> T with y_u ; counit == beta for beta : y_X => p.
std::optional<Arrow> tabulator_factor(const DoubleCategory& d, const TabulatorData& t, const Cell& beta);

bool local_product_universal(const DoubleCategory& d, const Pro& m, const Pro& n, const ProductData& q,
                             std::string* why = nullptr);
std::optional<ProductData> find_local_product(const DoubleCategory& d, const Pro& m, const Pro& n);
// Every cell into m whose source proarrow lies in the window.
std::vector<Cell> cells_into(const DoubleCategory& d, const Pro& m);
// into_m / into_n may carry precomputed cells_into results.
bool cartesian_product_universal(const DoubleCategory& d, const Pro& m, const Pro& n, const ProductData& q,
                                 std::string* why = nullptr, const std::vector<Cell>* into_m = nullptr,
                                 const std::vector<Cell>* into_n = nullptr);
std::optional<ProductData> find_cartesian_product(const DoubleCategory& d, const Pro& m, const Pro& n);

// Kernel f_! (x) f^* : A -|-> A and cokernel f^* (x) f_! : B -|-> B.
std::optional<Pro> kernel(const DoubleCategory& d, const Arrow& f);
std::optional<Pro> cokernel(const DoubleCategory& d, const Arrow& f);

// For a : y_T1 => m and b : y_T2 => n and x1 : X -> T1, x2 : X -> T2 with
// a.right o x1 == b.left o x2: the cell y_X => m (x) n obtained by pasting
// y_x1 ; a beside y_x2 ; b under the inverse unitor y_X => y_X (x) y_X.
std::optional<Cell> paste_beside(const DoubleCategory& d, const Arrow& x1, const Cell& a, const Arrow& x2,
                                 const Cell& b);

// Horizontal composite of a chain of proarrows, left-nested.
std::optional<Pro> hcomp_chain(const DoubleCategory& d, const std::vector<Pro>& ps);

}  // namespace relcheck
