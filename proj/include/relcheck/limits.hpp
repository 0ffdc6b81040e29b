#pragma once

#include "relcheck/category.hpp"

#include <optional>
#include <string>

namespace relcheck {

// Universal-property search over the universe of `c`. Candidates are scanned
// by apex id, then lexicographically by legs; the first cone that is a limit
// against every universe object is returned.
std::optional<LimitCone> find_limit(const Category& c, const LimitDiagram& d);

// Re-checks a cone against every universe object. Empty string means the cone
// commutes and is universal; otherwise a description of the failure.
std::string verify_limit(const Category& c, const LimitCone& cone);

// Cones over `d` with apex x (pairs of legs for product/pullback).
std::vector<std::vector<Arrow>> cones_from(const Category& c, const LimitDiagram& d, int x);

struct MorphismClass {
    bool mono = false;
    bool epi = false;
    bool iso = false;
    friend bool operator==(const MorphismClass&, const MorphismClass&) = default;
};

// Cancellation scans against the universe.
MorphismClass classify_morphism(const Category& c, const Arrow& f);
bool is_mono(const Category& c, const Arrow& f);
bool is_epi(const Category& c, const Arrow& f);
std::optional<Arrow> inverse(const Category& c, const Arrow& f);

}  // namespace relcheck
