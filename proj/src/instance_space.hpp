#pragma once

#include "relcheck/audit.hpp"

#include <functional>

namespace relcheck::detail {

// An instance space: the product of the listed dimensions, decoded by index
// with the last dimension varying fastest.
struct Block {
    int size = 0;
    std::string tag;
    std::vector<std::vector<Arrow>> arrows;
    std::vector<std::vector<Pro>> pros;
    std::vector<std::vector<Cell>> cells;

    std::uint64_t count() const;
    Instance at(std::uint64_t i) const;
};

// Runs `check` over the blocks (sorted by size, stable) exhaustively or on a
// seeded sample, stopping at the first failure.
ConditionResult run_blocks(const std::string& name, std::vector<Block> blocks, const AuditOptions& opt,
                           const std::function<Outcome(const Instance&)>& check,
                           const std::function<std::vector<WitnessItem>(const Instance&)>& describe);

// "left right top bottom name"
std::string cell_text(const DoubleCategory& d, const Cell& c);
std::optional<Cell> parse_cell_text(const DoubleCategory& d, std::string_view text);

std::string join(const std::vector<std::string>& v, const char* sep);

inline Outcome pass()
{
    return {};
}

inline Outcome fail(std::string note)
{
    return {Verdict::fail, std::move(note)};
}

inline Outcome skip(std::string note)
{
    return {Verdict::skip, std::move(note)};
}

}  // namespace relcheck::detail
