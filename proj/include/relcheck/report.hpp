#pragma once

#include "relcheck/audit.hpp"
#include "relcheck/factorization.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace relcheck {

// A report file holds one or more sections: "audit", "equivalence" or "fs".
struct ReportSection {
    std::string kind;
    AuditReport report;
    friend bool operator==(const ReportSection& a, const ReportSection& b);
};

struct ReportDocument {
    std::string subject;
    std::vector<ReportSection> sections;
    double seconds = 0;

    bool ok() const;
    const ReportSection* find(std::string_view kind) const;
};

// .dblrep: byte-stable for a fixed input, seed and budget. Carries verdicts,
// exhaustiveness and witnesses; counts, details and timing are text-only.
std::string emit_dblrep(const ReportDocument& doc);
ReportDocument parse_dblrep(std::string_view text, const std::string& source = "<input>");

std::string emit_text(const ReportDocument& doc, bool timing = true);

// Clauses of a factorization-system check as report conditions; the first
// violating instance of each clause becomes its witness.
AuditReport fs_report_as_audit(const FsReport& r, const Category& c, const std::string& subject);
// Re-runs the check and looks for the witness among the clause's violations.
bool replay_fs_witness(const FactorizationSystem& fs, const Witness& w, std::string* why = nullptr);

}  // namespace relcheck
