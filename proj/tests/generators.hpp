#pragma once

#include "relcheck/finset.hpp"

#include <random>
#include <vector>

namespace relcheck::testing {

// Seeded generators for property tests.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    int size(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    Arrow function(int n, int m)
    {
        std::vector<int> t(static_cast<std::size_t>(n));
        for (int& v : t)
            v = size(0, m - 1);
        return make_function(n, m, t);
    }

    BoolMatrix relation(int rows, int cols)
    {
        BoolMatrix r{rows, cols, 0};
        const int n = rows * cols;
        if (n > 0)
            r.bits = rng() & (n >= 64 ? ~0ULL : ((1ULL << n) - 1));
        return r;
    }
};

// Relation oracle independent of the library: explicit pair sets.
inline bool pair_in(const std::vector<std::pair<int, int>>& rel, int a, int b)
{
    for (auto [x, y] : rel)
        if (x == a && y == b)
            return true;
    return false;
}

}  // namespace relcheck::testing
