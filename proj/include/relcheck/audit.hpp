#pragma once

#include "relcheck/double_category.hpp"
#include "relcheck/factorization.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace relcheck {

// One line of a witness: kind is arrow, pro, cell, case or note. Cells are
// written "left right top bottom name".
struct WitnessItem {
    std::string kind;
    std::string text;
    friend bool operator==(const WitnessItem&, const WitnessItem&) = default;
};

struct Witness {
    std::string id;
    std::string condition;
    std::vector<WitnessItem> items;
    friend bool operator==(const Witness&, const Witness&) = default;
};

struct ConditionResult {
    std::string name;
    Verdict verdict = Verdict::pass;
    bool exhaustive = true;
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::string detail;
    std::optional<Witness> witness;
};

struct AuditReport {
    std::string subject;
    std::vector<ConditionResult> conditions;
    std::vector<std::string> covers;      // arrow names, support only
    std::vector<std::string> inclusions;
    double seconds = 0;

    const ConditionResult* find(std::string_view name) const;
    bool ok() const;  // no condition failed
    std::vector<std::string> failed() const;
};

struct AuditOptions {
    // Support objects with a larger id (the size, for finite sets) are left
    // out; negative means no limit.
    int max_size = -1;
    bool exhaustive = false;
    // Conditions with more instances than instance_limit are sampled.
    std::uint64_t samples = 1000;
    std::uint64_t instance_limit = 20000;
    std::uint64_t seed = 1;
    std::vector<std::string> only;
    // The factorization system on D0 when it is known (Rel backends).
    std::shared_ptr<const FactorizationSystem> fs;
};

// Audit conditions in report order. The first nine are the hypotheses of the
// characterization; the rest are derived structure and lemmas.
const std::vector<std::string>& audit_conditions();
const std::vector<std::string>& characterization_conditions();

struct Instance {
    std::vector<Arrow> arrows;
    std::vector<Pro> pros;
    std::vector<Cell> cells;
    std::string tag;
};

struct Outcome {
    Verdict verdict = Verdict::pass;
    std::string note;
};

// cover: cokernel canonical cell invertible; inclusion: kernel canonical cell
// invertible. When the kernel or cokernel is not representable the decision
// falls back to y_f being opcartesian / cartesian.
struct CoverInclusion {
    bool cover = false;
    bool inclusion = false;
    bool cover_by_cell = false;      // decided by the canonical cell
    bool inclusion_by_cell = false;
};

struct DerivedFS {
    std::shared_ptr<const Category> category;  // the support category
    std::shared_ptr<TableFS> fs;
    std::string error;                         // empty when derived
    FsReport report;
    bool ok() const { return error.empty() && fs && report.ok(); }
};

struct AmbientFS {
    std::shared_ptr<const FactorizationSystem> fs;
    std::string origin;  // given, derived, epimono, or the reason there is none
};

class Auditor {
public:
    Auditor(const DoubleCategory& d, AuditOptions opt = {});
    ~Auditor();

    AuditReport run();
    ConditionResult run_condition(const std::string& name);
    // The per-instance check behind a condition.
    Outcome check(const std::string& condition, const Instance& x);
    // Re-runs the instance recorded in a witness. True when the failure is
    // reproduced.
    bool replay(const Witness& w, std::string* why = nullptr);

    const DoubleCategory& double_category() const { return *d_; }
    std::vector<int> support() const;
    std::shared_ptr<const Category> support_category();

    std::optional<CompanionData> companion(const Arrow& f);
    std::optional<CompanionData> conjoint(const Arrow& f);
    std::optional<TabulatorData> tabulator(const Pro& p);
    CoverInclusion classify(const Arrow& f);
    DerivedFS derive();
    AmbientFS ambient();

    // The globular cell y_A => f^* (x) f_! along (f, f), pasted from the
    // conjoint and companion units.
    std::optional<Cell> cokernel_cone(const Arrow& f);
    // The Beck-Chevalley cell p^* (x) q_! => f_! (x) g^* of a pullback square.
    std::optional<Cell> beck_chevalley_cell(const Arrow& f, const Arrow& g, const Arrow& p, const Arrow& q);
    // The comparison from the image of T_p x_B T_q in A x C to the tabulator
    // of p (x) q, under the ambient factorization system.
    std::optional<Arrow> lax_comparison(const Pro& p, const Pro& q, std::string* why = nullptr);

private:
    struct Caches;
    const DoubleCategory* d_;
    AuditOptions opt_;
    std::unique_ptr<Caches> cache_;
};

// For e : P -> I, an arrow w : X -> I in the left class together with x with
// e o x == w; X is the least window object with a unit that has one.
struct CoveringCone {
    int x = 0;
    Arrow w;
    Arrow lift;
};
std::optional<CoveringCone> covering_cone(const DoubleCategory& d, const FactorizationSystem& fs, const Arrow& e);

// Convenience wrappers.
AuditReport audit(const DoubleCategory& d, const AuditOptions& opt = {});
CoverInclusion classify_cover_inclusion(const DoubleCategory& d, const Arrow& f);
DerivedFS derive_factorization_system(const DoubleCategory& d, const AuditOptions& opt = {});
// The cone over h : A -> C <- B : e given by the tabulator of h_! (x) e^*.
std::optional<LimitCone> pullback_via_tabulator(const DoubleCategory& d, const Arrow& h, const Arrow& e);

}  // namespace relcheck
