#include "relcheck/finset.hpp"

#include <bit>
#include <charconv>
#include <map>
#include <sstream>

namespace relcheck {

namespace {

void check_size(int n)
{
    if (n < 0 || n > max_finset)
        throw UniverseError("finite set size " + std::to_string(n) + " outside 0.." + std::to_string(max_finset));
}

std::uint64_t ipow(std::uint64_t b, int e)
{
    std::uint64_t r = 1;
    while (e-- > 0)
        r *= b;
    return r;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

std::optional<int> parse_int(std::string_view s)
{
    s = trim(s);
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

}  // namespace

Arrow make_function(int n, int m, std::span<const int> table)
{
    check_size(n);
    check_size(m);
    if (static_cast<int>(table.size()) != n)
        throw BoundaryError("function table has the wrong length");
    std::uint64_t code = 0;
    for (int v : table) {
        if (v < 0 || v >= m)
            throw BoundaryError("function value outside codomain");
        code = (code << 4) | static_cast<std::uint64_t>(v);
    }
    return Arrow{n, m, code};
}

std::vector<int> function_table(const Arrow& f)
{
    std::vector<int> t(static_cast<std::size_t>(f.src));
    for (int i = 0; i < f.src; ++i)
        t[static_cast<std::size_t>(i)] = apply(f, i);
    return t;
}

bool is_surjective(const Arrow& f)
{
    std::uint32_t hit = 0;
    for (int i = 0; i < f.src; ++i)
        hit |= 1U << apply(f, i);
    return std::popcount(hit) == f.tgt;
}

bool is_injective(const Arrow& f)
{
    std::uint32_t hit = 0;
    for (int i = 0; i < f.src; ++i) {
        const std::uint32_t bit = 1U << apply(f, i);
        if (hit & bit)
            return false;
        hit |= bit;
    }
    return true;
}

std::string function_name(const Arrow& f)
{
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < f.src; ++i)
        os << (i ? "," : "") << apply(f, i) + 1;
    os << "]:" << f.src << "->" << f.tgt;
    return os.str();
}

std::optional<Arrow> parse_function(std::string_view text)
{
    text = trim(text);
    if (text.empty() || text.front() != '[')
        return std::nullopt;
    const auto close = text.find(']');
    if (close == std::string_view::npos || close + 1 >= text.size() || text[close + 1] != ':')
        return std::nullopt;
    std::string_view body = text.substr(1, close - 1);
    std::string_view sig = text.substr(close + 2);
    std::size_t arrow_len = 2;
    auto arrow = sig.find("->");
    if (arrow == std::string_view::npos) {
        arrow = sig.find("\xE2\x86\x92");
        arrow_len = 3;
    }
    if (arrow == std::string_view::npos)
        return std::nullopt;
    auto n = parse_int(sig.substr(0, arrow));
    auto m = parse_int(sig.substr(arrow + arrow_len));
    if (!n || !m || *n < 0 || *m < 0 || *n > max_finset || *m > max_finset)
        return std::nullopt;
    std::vector<int> table;
    body = trim(body);
    while (!body.empty()) {
        const auto comma = body.find(',');
        auto v = parse_int(body.substr(0, comma));
        if (!v)
            return std::nullopt;
        table.push_back(*v - 1);
        if (comma == std::string_view::npos)
            break;
        body.remove_prefix(comma + 1);
    }
    if (static_cast<int>(table.size()) != *n)
        return std::nullopt;
    for (int v : table)
        if (v < 0 || v >= *m)
            return std::nullopt;
    return make_function(*n, *m, table);
}

FinSetCategory::FinSetCategory(int cap) : cap_(cap)
{
    check_size(cap);
}

std::vector<int> FinSetCategory::objects() const
{
    std::vector<int> out;
    for (int i = 0; i <= cap_; ++i)
        out.push_back(i);
    return out;
}

Arrow FinSetCategory::identity(int x) const
{
    check_size(x);
    std::uint64_t code = 0;
    for (int i = 0; i < x; ++i)
        code = (code << 4) | static_cast<std::uint64_t>(i);
    return Arrow{x, x, code};
}

Arrow FinSetCategory::compose(const Arrow& g, const Arrow& f) const
{
    if (f.tgt != g.src)
        throw BoundaryError("compose: " + function_name(g) + " o " + function_name(f) + " is not composable");
    std::uint64_t code = 0;
    for (int i = 0; i < f.src; ++i)
        code = (code << 4) | static_cast<std::uint64_t>(apply(g, apply(f, i)));
    return Arrow{f.src, g.tgt, code};
}

std::vector<Arrow> FinSetCategory::hom(int a, int b) const
{
    check_size(a);
    check_size(b);
    std::vector<Arrow> out;
    if (a > 0 && b == 0)
        return out;
    out.reserve(static_cast<std::size_t>(ipow(static_cast<std::uint64_t>(b), a)));
    std::vector<int> t(static_cast<std::size_t>(a), 0);
    for (;;) {
        out.push_back(make_function(a, b, t));
        int i = a - 1;
        while (i >= 0 && t[static_cast<std::size_t>(i)] == b - 1)
            t[static_cast<std::size_t>(i--)] = 0;
        if (i < 0)
            break;
        ++t[static_cast<std::size_t>(i)];
    }
    return out;
}

std::uint64_t FinSetCategory::hom_count(int a, int b) const
{
    return ipow(static_cast<std::uint64_t>(b), a);
}

bool FinSetCategory::valid(const Arrow& f) const
{
    if (!is_object(f.src) || !is_object(f.tgt))
        return false;
    if (f.src < 16 && (f.code >> (4 * f.src)) != 0)
        return false;
    for (int i = 0; i < f.src; ++i)
        if (apply(f, i) >= f.tgt)
            return false;
    return true;
}

std::optional<Arrow> FinSetCategory::parse_arrow(std::string_view text) const
{
    auto f = parse_function(text);
    if (f && valid(*f))
        return f;
    return std::nullopt;
}

std::optional<int> FinSetCategory::parse_object(std::string_view text) const
{
    auto v = parse_int(text);
    if (v && is_object(*v))
        return v;
    return std::nullopt;
}

std::optional<LimitCone> FinSetCategory::terminal() const
{
    LimitCone cone;
    cone.apex = 1;
    cone.diagram.shape = LimitShape::terminal;
    return cone;
}

std::optional<LimitCone> FinSetCategory::product(int a, int b) const
{
    check_size(a);
    check_size(b);
    if (a * b > max_finset)
        throw UniverseError("product " + std::to_string(a) + "x" + std::to_string(b) + " outside 0.." +
                            std::to_string(max_finset));
    std::vector<int> p1, p2;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
            p1.push_back(i);
            p2.push_back(j);
        }
    LimitCone cone;
    cone.apex = a * b;
    cone.legs = {make_function(a * b, a, p1), make_function(a * b, b, p2)};
    cone.diagram.shape = LimitShape::product;
    cone.diagram.a = a;
    cone.diagram.b = b;
    return cone;
}

std::optional<LimitCone> FinSetCategory::pullback(const Arrow& f, const Arrow& g) const
{
    if (f.tgt != g.tgt)
        throw BoundaryError("pullback of arrows with different codomains");
    std::vector<int> p1, p2;
    for (int i = 0; i < f.src; ++i)
        for (int j = 0; j < g.src; ++j)
            if (apply(f, i) == apply(g, j)) {
                p1.push_back(i);
                p2.push_back(j);
            }
    const int n = static_cast<int>(p1.size());
    if (n > max_finset)
        throw UniverseError("pullback of size " + std::to_string(n) + " outside 0.." + std::to_string(max_finset));
    LimitCone cone;
    cone.apex = n;
    cone.legs = {make_function(n, f.src, p1), make_function(n, g.src, p2)};
    cone.diagram.shape = LimitShape::pullback;
    cone.diagram.f = f;
    cone.diagram.g = g;
    return cone;
}

std::optional<Arrow> FinSetCategory::mediate(const LimitCone& cone, std::span<const Arrow> legs) const
{
    if (legs.empty() || legs.size() != cone.legs.size())
        return std::nullopt;
    const int x = legs[0].src;
    std::vector<int> t;
    for (int i = 0; i < x; ++i) {
        int found = -1;
        for (int k = 0; k < cone.apex && found < 0; ++k) {
            bool ok = true;
            for (std::size_t j = 0; j < legs.size() && ok; ++j)
                ok = apply(cone.legs[j], k) == apply(legs[j], i);
            if (ok)
                found = k;
        }
        if (found < 0)
            return std::nullopt;
        t.push_back(found);
    }
    return make_function(x, cone.apex, t);
}

std::optional<Arrow> FinSetCategory::lift(const Arrow& h1, const Arrow& m1, const Arrow* h2, const Arrow* m2) const
{
    if (h1.tgt != m1.tgt)
        return std::nullopt;
    if (h2 && (!m2 || h2->src != h1.src || m2->src != m1.src || h2->tgt != m2->tgt))
        return std::nullopt;
    std::vector<int> t;
    for (int i = 0; i < h1.src; ++i) {
        int found = -1;
        for (int k = 0; k < m1.src && found < 0; ++k)
            if (apply(m1, k) == apply(h1, i) && (!h2 || apply(*m2, k) == apply(*h2, i)))
                found = k;
        if (found < 0)
            return std::nullopt;
        t.push_back(found);
    }
    return make_function(h1.src, m1.src, t);
}

FiniteCategory finset_category(int n)
{
    check_size(n);
    FinSetCategory lazy(n);
    FiniteCategory c;
    for (int x = 0; x <= n; ++x)
        c.add_object(std::to_string(x));
    std::map<Arrow, int> ids;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b)
            for (const Arrow& f : lazy.hom(a, b))
                ids[f] = c.add_morphism(function_name(f), a, b);
    for (int x = 0; x <= n; ++x)
        c.set_identity(x, ids.at(lazy.identity(x)));
    for (const auto& [f, fi] : ids)
        for (int d = 0; d <= n; ++d)
            for (const Arrow& g : lazy.hom(f.tgt, d))
                c.set_composite(ids.at(g), fi, ids.at(lazy.compose(g, f)));
    return c;
}

BoolMatrix BoolMatrix::full(int r, int c)
{
    BoolMatrix m{r, c, 0};
    const int n = r * c;
    m.bits = n >= 64 ? ~0ULL : ((1ULL << n) - 1);
    return m;
}

BoolMatrix BoolMatrix::diagonal(int n)
{
    BoolMatrix m{n, n, 0};
    for (int i = 0; i < n; ++i)
        m.set(i, i);
    return m;
}

void BoolMatrix::set(int r, int c, bool v)
{
    const std::uint64_t bit = 1ULL << (r * cols + c);
    bits = v ? (bits | bit) : (bits & ~bit);
}

int BoolMatrix::count() const
{
    return std::popcount(bits);
}

BoolMatrix BoolMatrix::transpose() const
{
    BoolMatrix t{cols, rows, 0};
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (at(r, c))
                t.set(c, r);
    return t;
}

std::string BoolMatrix::str() const
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (at(r, c)) {
                os << (first ? "" : ",") << '(' << r + 1 << ',' << c + 1 << ')';
                first = false;
            }
    os << '}';
    return os.str();
}

BoolMatrix matrix_compose(const BoolMatrix& r, const BoolMatrix& s)
{
    if (r.cols != s.rows)
        throw BoundaryError("matrix_compose: inner dimensions differ");
    BoolMatrix out{r.rows, s.cols, 0};
    for (int a = 0; a < r.rows; ++a)
        for (int b = 0; b < r.cols; ++b)
            if (r.at(a, b))
                for (int c = 0; c < s.cols; ++c)
                    if (s.at(b, c))
                        out.set(a, c);
    return out;
}

BoolMatrix matrix_meet(const BoolMatrix& r, const BoolMatrix& s)
{
    if (r.rows != s.rows || r.cols != s.cols)
        throw BoundaryError("matrix_meet: dimensions differ");
    return {r.rows, r.cols, r.bits & s.bits};
}

bool matrix_leq(const BoolMatrix& r, const BoolMatrix& s)
{
    if (r.rows != s.rows || r.cols != s.cols)
        throw BoundaryError("matrix_leq: dimensions differ");
    return (r.bits & ~s.bits) == 0;
}

BoolMatrix matrix_of_span(const Arrow& l, const Arrow& r)
{
    if (l.src != r.src)
        throw BoundaryError("span legs have different apexes");
    if (l.tgt * r.tgt > 64)
        throw BoundaryError("relation too large for a 64-bit matrix");
    BoolMatrix m{l.tgt, r.tgt, 0};
    for (int k = 0; k < l.src; ++k)
        m.set(apply(l, k), apply(r, k));
    return m;
}

std::optional<BoolMatrix> parse_matrix(std::string_view text, int rows, int cols)
{
    text = trim(text);
    if (text.size() < 2 || text.front() != '{' || text.back() != '}' || rows * cols > 64)
        return std::nullopt;
    BoolMatrix m{rows, cols, 0};
    std::string_view body = trim(text.substr(1, text.size() - 2));
    while (!body.empty()) {
        if (body.front() != '(')
            return std::nullopt;
        const auto close = body.find(')');
        const auto comma = body.find(',');
        if (close == std::string_view::npos || comma == std::string_view::npos || comma > close)
            return std::nullopt;
        auto a = parse_int(body.substr(1, comma - 1));
        auto b = parse_int(body.substr(comma + 1, close - comma - 1));
        if (!a || !b || *a < 1 || *a > rows || *b < 1 || *b > cols)
            return std::nullopt;
        m.set(*a - 1, *b - 1);
        body = trim(body.substr(close + 1));
        if (!body.empty()) {
            if (body.front() != ',')
                return std::nullopt;
            body = trim(body.substr(1));
        }
    }
    return m;
}

Factorization finset_factorize(const Arrow& f)
{
    std::vector<int> slot(static_cast<std::size_t>(f.tgt), -1);
    std::vector<int> image;
    std::vector<int> e;
    for (int i = 0; i < f.src; ++i) {
        const int v = apply(f, i);
        if (slot[static_cast<std::size_t>(v)] < 0) {
            slot[static_cast<std::size_t>(v)] = static_cast<int>(image.size());
            image.push_back(v);
        }
        e.push_back(slot[static_cast<std::size_t>(v)]);
    }
    const int k = static_cast<int>(image.size());
    return {make_function(f.src, k, e), make_function(k, f.tgt, image)};
}

std::optional<Factorization> EpiMonoFS::factorize(const Arrow& f) const
{
    if (is_surjective(f))
        return Factorization{f, c_->identity(f.tgt)};
    return finset_factorize(f);
}

}  // namespace relcheck
