#pragma once

#include "relcheck/audit.hpp"
#include "relcheck/rel_double.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace relcheck {

// Conditions of an equivalence check, in report order.
const std::vector<std::string>& equivalence_conditions();

// Compares a double category D with Rel(D0; F), F the ambient factorization
// system of D. The comparison functors are
//
//   F : Rel(D0; F) -> D   R = (T, d, c)  |->  the extension of y_T along (d, c)
//   G : D -> Rel(D0; F)   p              |->  the tabulator span of p
//
// with unit eta_R : R -> GF(R) and counit epsilon_p : FG(p) => p.
class EquivalenceChecker {
public:
    EquivalenceChecker(const DoubleCategory& d, AuditOptions opt = {});
    ~EquivalenceChecker();

    // Runs the equivalence conditions. When they fail, the characterization
    // conditions are audited and the failed ones are listed on the witness of
    // the "equivalence" condition.
    AuditReport run();
    ConditionResult run_condition(const std::string& name);
    Outcome check(const std::string& condition, const Instance& x);
    bool replay(const Witness& w, std::string* why = nullptr);

    Auditor& auditor() { return *auditor_; }
    // Null when D0 carries no ambient factorization system.
    const RelDouble* rel_side();
    std::string rel_side_error();

    std::optional<CartesianCellData> F(const Pro& r);
    std::optional<Pro> G(const Pro& p);
    // eta_R as an arrow between the canonical apexes of R and GF(R).
    std::optional<Arrow> eta(const Pro& r);
    std::optional<Cell> epsilon(const Pro& p);
    // phi_{R,S} : F(R (.) S) => F(R) (x) F(S).
    std::optional<Cell> phi(const Pro& r, const Pro& s, std::string* why = nullptr);
    // G on a globular cell p => q, as an arrow of canonical apexes.
    std::optional<Arrow> G_cell(const Cell& a);
    // F on a morphism of relations R => S, as a globular cell.
    std::optional<Cell> F_cell(const Cell& a);

private:
    struct State;
    const DoubleCategory* d_;
    AuditOptions opt_;
    std::unique_ptr<Auditor> auditor_;
    std::unique_ptr<State> st_;
};

AuditReport check_equivalence(const DoubleCategory& d, const AuditOptions& opt = {});

}  // namespace relcheck
