#include "instance_space.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_set>

namespace relcheck::detail {

std::uint64_t Block::count() const
{
    std::uint64_t n = 1;
    for (const auto& v : arrows)
        n *= v.size();
    for (const auto& v : pros)
        n *= v.size();
    for (const auto& v : cells)
        n *= v.size();
    return n;
}

Instance Block::at(std::uint64_t i) const
{
    Instance x;
    x.tag = tag;
    x.arrows.resize(arrows.size());
    x.pros.resize(pros.size());
    x.cells.resize(cells.size());
    for (std::size_t k = cells.size(); k-- > 0;) {
        x.cells[k] = cells[k][i % cells[k].size()];
        i /= cells[k].size();
    }
    for (std::size_t k = pros.size(); k-- > 0;) {
        x.pros[k] = pros[k][i % pros[k].size()];
        i /= pros[k].size();
    }
    for (std::size_t k = arrows.size(); k-- > 0;) {
        x.arrows[k] = arrows[k][i % arrows[k].size()];
        i /= arrows[k].size();
    }
    return x;
}

namespace {

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

ConditionResult run_blocks(const std::string& name, std::vector<Block> blocks, const AuditOptions& opt,
                           const std::function<Outcome(const Instance&)>& check,
                           const std::function<std::vector<WitnessItem>(const Instance&)>& describe)
{
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) { return x.size < y.size; });
    ConditionResult r;
    r.name = name;
    std::vector<std::uint64_t> offsets;
    std::uint64_t total = 0;
    for (const auto& b : blocks) {
        offsets.push_back(total);
        total += b.count();
    }
    r.exhaustive = opt.exhaustive || total <= opt.instance_limit;
    std::vector<std::uint64_t> picks;
    if (!r.exhaustive) {
        std::mt19937_64 rng(opt.seed ^ fnv1a(name));
        std::uniform_int_distribution<std::uint64_t> dist(0, total - 1);
        std::unordered_set<std::uint64_t> seen;
        const std::uint64_t want = std::min(opt.samples, total);
        while (seen.size() < want)
            seen.insert(dist(rng));
        picks.assign(seen.begin(), seen.end());
        std::sort(picks.begin(), picks.end());
    }
    auto decode = [&](std::uint64_t i) {
        auto it = std::upper_bound(offsets.begin(), offsets.end(), i);
        std::size_t k = static_cast<std::size_t>(it - offsets.begin()) - 1;
        return blocks[k].at(i - offsets[k]);
    };
    std::string first_skip;
    auto visit = [&](std::uint64_t i) -> bool {
        Instance x = decode(i);
        Outcome o = check(x);
        ++r.checked;
        if (o.verdict == Verdict::skip) {
            ++r.skipped;
            if (first_skip.empty())
                first_skip = o.note;
            return true;
        }
        if (o.verdict == Verdict::pass)
            return true;
        Witness w;
        w.condition = name;
        w.items = describe(x);
        if (!o.note.empty())
            w.items.push_back({"note", o.note});
        r.witness = std::move(w);
        r.verdict = Verdict::fail;
        r.detail = o.note;
        return false;
    };
    if (r.exhaustive) {
        for (std::uint64_t i = 0; i < total; ++i)
            if (!visit(i))
                break;
    } else {
        for (std::uint64_t i : picks)
            if (!visit(i))
                break;
    }
    if (r.verdict != Verdict::fail) {
        if (r.skipped > 0) {
            r.verdict = Verdict::skip;
            r.detail = std::to_string(r.skipped) + " of " + std::to_string(r.checked) +
                       " instances lack structure: " + first_skip;
        } else {
            r.detail = std::to_string(r.checked) + (r.exhaustive ? " instances" : " sampled instances");
        }
    }
    return r;
}

std::string cell_text(const DoubleCategory& d, const Cell& c)
{
    const Category& k = d.d0();
    return k.arrow_name(c.left) + " " + k.arrow_name(c.right) + " " + d.pro_name(c.top) + " " +
           d.pro_name(c.bottom) + " " + d.cell_name(c);
}

std::optional<Cell> parse_cell_text(const DoubleCategory& d, std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::vector<std::string> parts;
    std::string w;
    while (in >> w)
        parts.push_back(w);
    if (parts.size() != 5)
        return std::nullopt;
    auto l = d.d0().parse_arrow(parts[0]);
    auto r = d.d0().parse_arrow(parts[1]);
    auto t = d.parse_pro(parts[2]);
    auto b = d.parse_pro(parts[3]);
    if (!l || !r || !t || !b)
        return std::nullopt;
    return d.find_cell(*l, *r, *t, *b, parts[4]);
}

std::string join(const std::vector<std::string>& v, const char* sep)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += sep;
        out += v[i];
    }
    return out;
}

}  // namespace relcheck::detail
