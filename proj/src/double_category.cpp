#include "relcheck/double_category.hpp"

namespace relcheck {

std::vector<Pro> DoubleCategory::all_proarrows() const
{
    std::vector<Pro> out;
    for (int a : window())
        for (int b : window())
            for (const Pro& p : proarrows(a, b))
                out.push_back(p);
    return out;
}

std::optional<Cell> DoubleCategory::find_cell(const Arrow& left, const Arrow& right, const Pro& top,
                                              const Pro& bottom, std::string_view name) const
{
    for (const Cell& c : cells(left, right, top, bottom))
        if (cell_name(c) == name)
            return c;
    return std::nullopt;
}

}  // namespace relcheck
