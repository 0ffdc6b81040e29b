#pragma once

#include "relcheck/category.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace relcheck {

// f = m o e
struct Factorization {
    Arrow e;
    Arrow m;
    friend bool operator==(const Factorization&, const Factorization&) = default;
};

class FactorizationSystem {
public:
    virtual ~FactorizationSystem() = default;
    virtual const Category& category() const = 0;
    virtual bool in_left(const Arrow& f) const = 0;
    virtual bool in_right(const Arrow& f) const = 0;
    virtual std::optional<Factorization> factorize(const Arrow& f) const = 0;
    virtual std::string name() const { return "fs"; }
};

// Classes given by predicates over arrows; factorizations either pinned
// explicitly or found by the generic choice rule (see choose_factorization).
class TableFS : public FactorizationSystem {
public:
    using Predicate = std::function<bool(const Arrow&)>;

    TableFS(const Category& c, Predicate left, Predicate right, std::string name = "table");
    TableFS(const Category& c, std::set<Arrow> left, std::set<Arrow> right, std::string name = "table");

    void pin(const Arrow& f, const Factorization& ef) { pinned_[f] = ef; }

    const Category& category() const override { return *c_; }
    bool in_left(const Arrow& f) const override { return left_(f); }
    bool in_right(const Arrow& f) const override { return right_(f); }
    std::optional<Factorization> factorize(const Arrow& f) const override;
    std::string name() const override { return name_; }

private:
    const Category* c_;
    Predicate left_;
    Predicate right_;
    std::map<Arrow, Factorization> pinned_;
    std::string name_;
};

// Search for some (e, m) with e in E, m in M, m o e = f. When f itself is in E
// and the identity on its codomain is in M the answer is (f, id), dually
// (id, f); otherwise least middle object, then least m, then least e.
std::optional<Factorization> choose_factorization(const Category& c,
                                                  const std::function<bool(const Arrow&)>& left,
                                                  const std::function<bool(const Arrow&)>& right,
                                                  const Arrow& f);

// Built-in class predicates.
bool is_iso(const Category& c, const Arrow& f);
TableFS iso_all(const Category& c);   // (isos, all)
TableFS all_iso(const Category& c);   // (all, isos)

// d with d o e = top and m o d = bottom.
struct LiftingSquare {
    Arrow e, m, top, bottom;
};

class OrthogonalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws OrthogonalityError when there is no filler or more than one.
Arrow fill_diagonal(const Category& c, const LiftingSquare& sq);
// All fillers of a square, in hom order.
std::vector<Arrow> diagonal_fillers(const Category& c, const LiftingSquare& sq);

enum class Verdict { pass, fail, skip };
const char* to_string(Verdict v);

struct FsClause {
    std::string name;
    Verdict verdict = Verdict::pass;
    std::string detail;
    std::vector<std::vector<Arrow>> witnesses;  // every violating instance
};

struct FsReport {
    FsClause existence{"existence", Verdict::pass, {}, {}};
    FsClause uniqueness{"uniqueness", Verdict::pass, {}, {}};
    FsClause orthogonality{"orthogonality", Verdict::pass, {}, {}};
    FsClause closure{"closure", Verdict::pass, {}, {}};
    FsClause stability{"stability", Verdict::pass, {}, {}};
    FsClause properness{"properness", Verdict::pass, {}, {}};

    std::vector<const FsClause*> clauses() const
    {
        return {&existence, &uniqueness, &orthogonality, &closure, &stability, &properness};
    }
    bool ok() const;
    std::vector<std::string> failed() const;
};

// Exhaustive over the universe of fs.category(). Stability ranges over all
// pullbacks the category has (found by find_limit).
FsReport check_factorization_system(const FactorizationSystem& fs);

// Arrows of the universe, ordered by (src, tgt, code).
std::vector<Arrow> all_arrows(const Category& c);

}  // namespace relcheck
