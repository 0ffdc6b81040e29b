#include "relcheck/formats.hpp"

#include "relcheck/finset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace relcheck {

ParseError::ParseError(std::string source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line),
      message_(message)
{
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path, 0, "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, std::string_view text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

std::optional<int> parse_finset_literal(std::string_view text)
{
    constexpr std::string_view head = "finset(";
    if (text.size() < head.size() + 2 || text.substr(0, head.size()) != head || text.back() != ')')
        return std::nullopt;
    auto digits = text.substr(head.size(), text.size() - head.size() - 1);
    int n = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || p != digits.data() + digits.size() || n < 0)
        return std::nullopt;
    return n;
}

namespace {

struct Line {
    int number = 0;
    std::vector<std::string> words;
};

std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        Line line{number, {}};
        std::istringstream in{std::string(raw)};
        std::string w;
        while (in >> w)
            line.words.push_back(w);
        if (!line.words.empty())
            out.push_back(std::move(line));
        if (end == text.size())
            break;
        pos = end + 1;
    }
    return out;
}

bool fcat_keyword(const std::string& w)
{
    return w == "object" || w == "morphism" || w == "identity" || w == "compose";
}

// Shape checks: `expect(line, n, {{i, "tok"}...})`.
void expect_shape(const Line& l, std::size_t n, std::initializer_list<std::pair<std::size_t, const char*>> fixed,
                  const std::string& source, const char* usage)
{
    bool ok = l.words.size() == n;
    for (auto [i, tok] : fixed)
        ok = ok && i < l.words.size() && l.words[i] == tok;
    if (!ok)
        throw ParseError(source, l.number, std::string("expected `") + usage + "`");
}

// Feeds one fcat line into c.
void fcat_line(FiniteCategory& c, const Line& l, const std::string& source)
{
    const auto& w = l.words;
    auto object = [&](const std::string& name) {
        auto x = c.find_object(name);
        if (!x)
            throw ParseError(source, l.number, "unknown object " + name);
        return *x;
    };
    auto morphism = [&](const std::string& name) {
        auto m = c.find_morphism(name);
        if (!m)
            throw ParseError(source, l.number, "unknown morphism " + name);
        return *m;
    };
    try {
        if (w[0] == "object") {
            expect_shape(l, 2, {}, source, "object <name>");
            if (c.find_object(w[1]))
                throw ParseError(source, l.number, "duplicate object " + w[1]);
            c.add_object(w[1]);
        } else if (w[0] == "morphism") {
            expect_shape(l, 6, {{2, ":"}, {4, "->"}}, source, "morphism <name> : <src> -> <tgt>");
            if (c.find_morphism(w[1]))
                throw ParseError(source, l.number, "duplicate morphism " + w[1]);
            c.add_morphism(w[1], object(w[3]), object(w[5]));
        } else if (w[0] == "identity") {
            expect_shape(l, 4, {{2, "="}}, source, "identity <object> = <morphism>");
            c.set_identity(object(w[1]), morphism(w[3]));
        } else if (w[0] == "compose") {
            expect_shape(l, 5, {{3, "="}}, source, "compose <g> <f> = <h>");
            c.set_composite(morphism(w[1]), morphism(w[2]), morphism(w[4]));
        } else {
            throw ParseError(source, l.number, "unknown directive " + w[0]);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(source, l.number, e.what());
    }
}

// Identity composites the file left out, then validation.
void finish_fcat(FiniteCategory& c, const std::string& source)
{
    for (int x = 0; x < c.object_count(); ++x)
        if (c.identity_id(x) < 0)
            throw ParseError(source, 0, "object " + c.object_name(x) + " has no identity");
    for (int f = 0; f < c.morphism_count(); ++f) {
        const auto& m = c.morphism(f);
        const int it = c.identity_id(m.tgt);
        const int is = c.identity_id(m.src);
        if (c.composite_id(it, f) < 0)
            c.set_composite(it, f, f);
        if (c.composite_id(f, is) < 0)
            c.set_composite(f, is, f);
    }
    if (auto err = c.validate(); !err.empty())
        throw ParseError(source, 0, err);
}

}  // namespace

std::shared_ptr<FiniteCategory> parse_fcat(std::string_view text, const std::string& source)
{
    auto c = std::make_shared<FiniteCategory>();
    for (const Line& l : tokenize(text))
        fcat_line(*c, l, source);
    finish_fcat(*c, source);
    return c;
}

std::string emit_fcat(const FiniteCategory& c)
{
    std::ostringstream os;
    for (int x = 0; x < c.object_count(); ++x)
        os << "object " << c.object_name(x) << '\n';
    for (int f = 0; f < c.morphism_count(); ++f) {
        const auto& m = c.morphism(f);
        os << "morphism " << m.name << " : " << c.object_name(m.src) << " -> " << c.object_name(m.tgt) << '\n';
    }
    for (int x = 0; x < c.object_count(); ++x)
        os << "identity " << c.object_name(x) << " = " << c.morphism(c.identity_id(x)).name << '\n';
    for (int g = 0; g < c.morphism_count(); ++g)
        for (int f = 0; f < c.morphism_count(); ++f)
            if (int h = c.composite_id(g, f); h >= 0)
                os << "compose " << c.morphism(g).name << ' ' << c.morphism(f).name << " = " << c.morphism(h).name
                   << '\n';
    return os.str();
}

std::shared_ptr<const Category> load_category(const std::string& spec)
{
    if (auto n = parse_finset_literal(spec)) {
        if (*n > max_finset)
            throw ParseError(spec, 0, "finset size above " + std::to_string(max_finset));
        return std::make_shared<FinSetCategory>(*n);
    }
    return parse_fcat(read_file(spec), spec);
}

std::shared_ptr<TableFS> parse_fs(std::string_view text, const Category& c, const std::string& source)
{
    std::set<Arrow> left, right;
    struct Pin {
        Arrow f;
        Factorization ef;
        int line;
    };
    std::vector<Pin> pins;
    std::set<Arrow>* section = nullptr;
    auto arrow = [&](const std::string& name, int line) {
        auto f = c.parse_arrow(name);
        if (!f)
            throw ParseError(source, line, "unknown arrow " + name);
        return *f;
    };
    for (const Line& l : tokenize(text)) {
        const auto& w = l.words;
        std::size_t first = 0;
        if (w[0] == "left:" || w[0] == "right:") {
            section = w[0] == "left:" ? &left : &right;
            first = 1;
        } else if (w[0] == "factor") {
            section = nullptr;
            expect_shape(l, 6, {{2, "="}, {4, ";"}}, source, "factor <f> = <e> ; <m>");
            Arrow f = arrow(w[1], l.number);
            Arrow e = arrow(w[3], l.number);
            Arrow m = arrow(w[5], l.number);
            if (e.tgt != m.src || e.src != f.src || m.tgt != f.tgt || c.compose(m, e) != f)
                throw ParseError(source, l.number, "factorization does not compose to " + w[1]);
            pins.push_back({f, Factorization{e, m}, l.number});
            continue;
        } else if (!section) {
            throw ParseError(source, l.number, "expected `left:`, `right:` or `factor`");
        }
        for (std::size_t i = first; i < w.size(); ++i)
            section->insert(arrow(w[i], l.number));
    }
    for (const Pin& p : pins) {
        if (!left.count(p.ef.e) || !right.count(p.ef.m))
            throw ParseError(source, p.line, "pinned factorization of " + c.arrow_name(p.f) + " leaves the classes");
    }
    auto fs = std::make_shared<TableFS>(c, std::move(left), std::move(right), source);
    for (const Pin& p : pins)
        fs->pin(p.f, p.ef);
    return fs;
}

std::string emit_fs(const FactorizationSystem& fs)
{
    const Category& c = fs.category();
    const auto arrows = all_arrows(c);
    std::ostringstream os;
    os << "left:";
    for (const Arrow& f : arrows)
        if (fs.in_left(f))
            os << ' ' << c.arrow_name(f);
    os << "\nright:";
    for (const Arrow& f : arrows)
        if (fs.in_right(f))
            os << ' ' << c.arrow_name(f);
    os << '\n';
    for (const Arrow& f : arrows)
        if (auto ef = fs.factorize(f))
            os << "factor " << c.arrow_name(f) << " = " << c.arrow_name(ef->e) << " ; " << c.arrow_name(ef->m)
               << '\n';
    return os.str();
}

std::shared_ptr<const FactorizationSystem> load_fs(const std::string& spec, const Category& c,
                                                   const std::string& category_spec)
{
    if (spec == "epimono") {
        if (!parse_finset_literal(category_spec) || !dynamic_cast<const FinSetCategory*>(&c))
            throw ParseError(spec, 0, "epimono is only defined for finset(N) categories");
        return std::make_shared<EpiMonoFS>(c);
    }
    return parse_fs(read_file(spec), c, spec);
}

namespace {

const char* mode_name(TableDouble::Mode m)
{
    switch (m) {
    case TableDouble::Mode::thin:
        return "thin";
    case TableDouble::Mode::explicit_cells:
        return "explicit";
    case TableDouble::Mode::spans:
        return "spans";
    }
    return "?";
}

std::string token(const std::string& s)
{
    if (s.empty() || s.find_first_of(" \t\n#") != std::string::npos)
        throw std::invalid_argument("name cannot be written to a table file: '" + s + "'");
    return s;
}

}  // namespace

std::unique_ptr<TableDouble> parse_dblcat(std::string_view text, const std::string& source)
{
    const auto lines = tokenize(text);
    std::optional<TableDouble::Mode> mode;
    std::string d0_spec;
    std::string name;
    std::shared_ptr<FiniteCategory> inline_cat;
    for (const Line& l : lines) {
        const auto& w = l.words;
        if (w[0] == "mode") {
            expect_shape(l, 2, {}, source, "mode thin|explicit|spans");
            if (mode)
                throw ParseError(source, l.number, "duplicate mode line");
            if (w[1] == "thin")
                mode = TableDouble::Mode::thin;
            else if (w[1] == "explicit")
                mode = TableDouble::Mode::explicit_cells;
            else if (w[1] == "spans")
                mode = TableDouble::Mode::spans;
            else
                throw ParseError(source, l.number, "unknown mode " + w[1]);
        } else if (w[0] == "d0") {
            expect_shape(l, 2, {}, source, "d0 finset(N)|inline");
            if (!d0_spec.empty())
                throw ParseError(source, l.number, "duplicate d0 line");
            d0_spec = w[1];
            if (d0_spec == "inline")
                inline_cat = std::make_shared<FiniteCategory>();
            else if (!parse_finset_literal(d0_spec))
                throw ParseError(source, l.number, "d0 must be finset(N) or inline");
        } else if (w[0] == "name") {
            expect_shape(l, 2, {}, source, "name <name>");
            name = w[1];
        } else if (fcat_keyword(w[0])) {
            if (!inline_cat)
                throw ParseError(source, l.number, "category lines need `d0 inline` first");
            fcat_line(*inline_cat, l, source);
        }
    }
    if (!mode)
        throw ParseError(source, 0, "missing mode line");
    if (d0_spec.empty())
        throw ParseError(source, 0, "missing d0 line");
    std::shared_ptr<const Category> d0;
    if (inline_cat) {
        finish_fcat(*inline_cat, source);
        d0 = inline_cat;
    } else {
        d0 = load_category(d0_spec);
    }
    auto t = std::make_unique<TableDouble>(*mode, d0, d0_spec);
    auto window = d0->objects();
    std::sort(window.begin(), window.end());
    if (!name.empty())
        t->set_name(name);

    for (const Line& l : lines) {
        const auto& w = l.words;
        auto object = [&](const std::string& s) {
            auto x = d0->parse_object(s);
            if (!x || !std::binary_search(window.begin(), window.end(), *x))
                throw ParseError(source, l.number, "unknown object " + s);
            return *x;
        };
        auto arrow = [&](const std::string& s) {
            auto f = d0->parse_arrow(s);
            if (!f)
                throw ParseError(source, l.number, "unknown arrow " + s);
            return *f;
        };
        auto pro = [&](const std::string& s) {
            auto p = t->parse_pro(s);
            if (!p)
                throw ParseError(source, l.number, "unknown proarrow " + s);
            return static_cast<int>(p->code);
        };
        auto cell = [&](const std::string& s) {
            for (std::size_t i = 0; i < t->cell_entries().size(); ++i)
                if (t->cell_entries()[i].name == s)
                    return static_cast<int>(i);
            throw ParseError(source, l.number, "unknown cell " + s);
        };
        try {
            const std::string& k = w[0];
            if (k == "mode" || k == "d0" || k == "name" || fcat_keyword(k)) {
                continue;
            } else if (k == "support") {
                std::vector<int> objs;
                for (std::size_t i = 1; i < w.size(); ++i)
                    objs.push_back(object(w[i]));
                t->set_support(objs);
            } else if (k == "proarrow") {
                expect_shape(l, 6, {{2, ":"}, {4, "-|->"}}, source, "proarrow <name> : <a> -|-> <b>");
                t->add_proarrow(w[1], object(w[3]), object(w[5]));
            } else if (k == "span") {
                expect_shape(l, 11, {{2, ":"}, {4, "<-"}, {6, "->"}, {8, "via"}}, source,
                             "span <name> : <a> <- <apex> -> <b> via <l> <r>");
                const int apex = object(w[5]);
                Span s{apex, arrow(w[9]), arrow(w[10])};
                if (s.l.src != apex || s.r.src != apex || s.l.tgt != object(w[3]) || s.r.tgt != object(w[7]))
                    throw ParseError(source, l.number, "span legs do not match the declared ends");
                t->add_span(w[1], s);
            } else if (k == "unit") {
                expect_shape(l, 4, {{2, "="}}, source, "unit <object> = <proarrow>");
                t->set_unit(object(w[1]), pro(w[3]));
            } else if (k == "hcomp") {
                expect_shape(l, 5, {{3, "="}}, source, "hcomp <p> <q> = <r>");
                t->set_hcomp(pro(w[1]), pro(w[2]), pro(w[4]));
            } else if (k == "cell" && *mode == TableDouble::Mode::thin) {
                expect_shape(l, 7, {{3, ":"}, {5, "=>"}}, source, "cell <left> <right> : <top> => <bottom>");
                t->add_thin_cell(arrow(w[1]), arrow(w[2]), pro(w[4]), pro(w[6]));
            } else if (k == "cell") {
                expect_shape(l, 9, {{2, ":"}, {5, ":"}, {7, "=>"}}, source,
                             "cell <name> : <left> <right> : <top> => <bottom>");
                t->add_cell(w[1], arrow(w[3]), arrow(w[4]), pro(w[6]), pro(w[8]));
            } else if (k == "vcomp") {
                expect_shape(l, 5, {{3, "="}}, source, "vcomp <a> <b> = <c>");
                t->set_vcomp(cell(w[1]), cell(w[2]), cell(w[4]));
            } else if (k == "hcell") {
                expect_shape(l, 5, {{3, "="}}, source, "hcell <a> <b> = <c>");
                t->set_hcomp_cell(cell(w[1]), cell(w[2]), cell(w[4]));
            } else if (k == "idcell") {
                expect_shape(l, 4, {{2, "="}}, source, "idcell <proarrow> = <cell>");
                t->set_identity_cell(pro(w[1]), cell(w[3]));
            } else if (k == "unitcell") {
                expect_shape(l, 4, {{2, "="}}, source, "unitcell <arrow> = <cell>");
                t->set_unit_cell(arrow(w[1]), cell(w[3]));
            } else if (k == "associator") {
                expect_shape(l, 6, {{4, "="}}, source, "associator <p> <q> <r> = <cell>");
                t->set_associator(pro(w[1]), pro(w[2]), pro(w[3]), cell(w[5]));
            } else if (k == "lunitor") {
                expect_shape(l, 4, {{2, "="}}, source, "lunitor <proarrow> = <cell>");
                t->set_left_unitor(pro(w[1]), cell(w[3]));
            } else if (k == "runitor") {
                expect_shape(l, 4, {{2, "="}}, source, "runitor <proarrow> = <cell>");
                t->set_right_unitor(pro(w[1]), cell(w[3]));
            } else {
                throw ParseError(source, l.number, "unknown directive " + k);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(source, l.number, e.what());
        }
    }
    if (auto err = t->validate(true); !err.empty())
        throw ParseError(source, 0, err);
    return t;
}

std::string emit_dblcat(const TableDouble& d)
{
    const Category& c = d.d0();
    auto obj = [&](int x) { return token(c.object_name(x)); };
    auto arr = [&](const Arrow& f) { return token(c.arrow_name(f)); };
    const auto& pros = d.pro_entries();
    auto pn = [&](int id) { return token(pros.at(static_cast<std::size_t>(id)).name); };
    const auto& cells = d.cell_entries();
    auto cn = [&](int id) { return token(cells.at(static_cast<std::size_t>(id)).name); };

    std::ostringstream os;
    os << "name " << token(d.name()) << '\n';
    os << "mode " << mode_name(d.mode()) << '\n';
    os << "d0 " << d.d0_spec() << '\n';
    if (d.d0_spec() == "inline") {
        auto fc = dynamic_cast<const FiniteCategory*>(&c);
        if (!fc)
            throw std::invalid_argument("inline D0 must be a finite category");
        os << emit_fcat(*fc);
    }
    if (!d.declared_support().empty()) {
        os << "support";
        for (int x : d.declared_support())
            os << ' ' << obj(x);
        os << '\n';
    }
    for (std::size_t i = 0; i < pros.size(); ++i) {
        const auto& e = pros[i];
        if (d.mode() == TableDouble::Mode::spans)
            os << "span " << token(e.name) << " : " << obj(e.src) << " <- " << obj(e.span.apex) << " -> "
               << obj(e.tgt) << " via " << arr(e.span.l) << ' ' << arr(e.span.r) << '\n';
        else
            os << "proarrow " << token(e.name) << " : " << obj(e.src) << " -|-> " << obj(e.tgt) << '\n';
    }
    for (const auto& [x, p] : d.unit_table())
        os << "unit " << obj(x) << " = " << pn(p) << '\n';
    for (const auto& [pq, r] : d.hcomp_table())
        os << "hcomp " << pn(pq.first) << ' ' << pn(pq.second) << " = " << pn(r) << '\n';
    for (const auto& [l, r, top, bottom] : d.thin_cells())
        os << "cell " << arr(l) << ' ' << arr(r) << " : " << pn(top) << " => " << pn(bottom) << '\n';
    for (const auto& e : cells)
        os << "cell " << token(e.name) << " : " << arr(e.left) << ' ' << arr(e.right) << " : " << pn(e.top)
           << " => " << pn(e.bottom) << '\n';
    for (const auto& [ab, x] : d.vcomp_cell_table())
        os << "vcomp " << cn(ab.first) << ' ' << cn(ab.second) << " = " << cn(x) << '\n';
    for (const auto& [ab, x] : d.hcomp_cell_table())
        os << "hcell " << cn(ab.first) << ' ' << cn(ab.second) << " = " << cn(x) << '\n';
    for (const auto& [p, x] : d.identity_cell_table())
        os << "idcell " << pn(p) << " = " << cn(x) << '\n';
    for (const auto& [f, x] : d.unit_cell_table())
        os << "unitcell " << arr(f) << " = " << cn(x) << '\n';
    for (const auto& [pqr, x] : d.associator_table())
        os << "associator " << pn(std::get<0>(pqr)) << ' ' << pn(std::get<1>(pqr)) << ' ' << pn(std::get<2>(pqr))
           << " = " << cn(x) << '\n';
    for (const auto& [m, x] : d.left_unitor_table())
        os << "lunitor " << pn(m) << " = " << cn(x) << '\n';
    for (const auto& [m, x] : d.right_unitor_table())
        os << "runitor " << pn(m) << " = " << cn(x) << '\n';
    return os.str();
}

}  // namespace relcheck
