#include "relcheck/cli.hpp"

#include "relcheck/audit.hpp"
#include "relcheck/equivalence.hpp"
#include "relcheck/finset.hpp"
#include "relcheck/formats.hpp"
#include "relcheck/rel_double.hpp"
#include "relcheck/report.hpp"
#include "relcheck/table_double.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <ostream>

namespace relcheck {

namespace {

struct Args {
    std::string category;
    std::string fs;
    std::string dbl;
    int max_size = -1;
    bool exhaustive = false;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string out;
    std::vector<std::string> positional;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The double category under study with everything it borrows from.
struct Subject {
    std::shared_ptr<const Category> category;
    std::shared_ptr<const FactorizationSystem> fs;
    std::unique_ptr<TableDouble> table;
    std::unique_ptr<RelDouble> rel;
    std::string name;

    const DoubleCategory& d() const
    {
        if (table)
            return *table;
        return *rel;
    }
};

std::shared_ptr<const FactorizationSystem> load_fs_for(const Args& a, const Category& c, const std::string& cat_spec)
{
    if (!a.fs.empty())
        return load_fs(a.fs, c, cat_spec);
    if (parse_finset_literal(cat_spec))
        return std::make_shared<EpiMonoFS>(c);
    throw InputError("--fs is required for category " + cat_spec);
}

Subject load_subject(const Args& a)
{
    Subject s;
    if (!a.dbl.empty()) {
        if (!a.category.empty())
            throw InputError("--double and --category are exclusive");
        s.table = parse_dblcat(read_file(a.dbl), a.dbl);
        s.category = s.table->d0_ptr();
        if (!a.fs.empty())
            s.fs = load_fs(a.fs, *s.category, s.table->d0_spec());
        s.name = s.table->name();
        return s;
    }
    if (a.category.empty())
        throw InputError("one of --double or --category is required");
    s.category = load_category(a.category);
    s.fs = load_fs_for(a, *s.category, a.category);
    try {
        s.rel = build_rel_double(s.category, s.fs, true);
    } catch (const InvalidFactorizationSystem& e) {
        throw InputError(e.what());
    }
    s.name = "rel(" + a.category + "; " + s.fs->name() + ")";
    return s;
}

AuditOptions audit_options(const Args& a, const Subject& s)
{
    AuditOptions o;
    o.max_size = a.max_size;
    o.exhaustive = a.exhaustive;
    o.samples = a.samples;
    o.seed = a.seed;
    o.fs = s.fs;
    return o;
}

void emit(const Args& a, const ReportDocument& doc, std::ostream& out)
{
    const std::string text = a.format == "dblrep" ? emit_dblrep(doc) : emit_text(doc);
    if (a.out.empty())
        out << text;
    else
        write_file(a.out, text);
}

double since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int result(const ReportDocument& doc)
{
    return doc.ok() ? exit_pass : exit_fail;
}

int cmd_audit(const Args& a, std::ostream& out)
{
    const auto t0 = std::chrono::steady_clock::now();
    Subject s = load_subject(a);
    ReportDocument doc;
    doc.subject = s.name;
    doc.sections.push_back({"audit", audit(s.d(), audit_options(a, s))});
    doc.seconds = since(t0);
    emit(a, doc, out);
    return result(doc);
}

int cmd_equivalence(const Args& a, std::ostream& out)
{
    const auto t0 = std::chrono::steady_clock::now();
    Subject s = load_subject(a);
    EquivalenceChecker eq(s.d(), audit_options(a, s));
    ReportDocument doc;
    doc.subject = s.name;
    AuditReport er = eq.run();
    doc.sections.push_back({"audit", eq.auditor().run()});
    doc.sections.push_back({"equivalence", std::move(er)});
    doc.seconds = since(t0);
    emit(a, doc, out);
    return result(doc);
}

int cmd_build_rel(const Args& a, std::ostream& out)
{
    if (a.category.empty())
        throw InputError("build-rel needs --category");
    Subject s = load_subject(a);
    const Category& c = *s.category;
    std::vector<Pro> listed;
    std::vector<int> support;
    const auto objs = c.objects();
    for (int x : objs)
        if (a.max_size < 0 || x <= a.max_size)
            support.push_back(x);
    for (int x : support)
        for (int y : support)
            for (const Pro& p : s.rel->proarrows(x, y))
                listed.push_back(p);
    for (int x : objs)
        if (std::find(support.begin(), support.end(), x) == support.end())
            if (auto y = s.rel->unit(x))
                listed.push_back(*y);
    const std::string spec = parse_finset_literal(a.category) ? a.category : "inline";
    auto t = tabulate_thin(*s.rel, s.category, spec, listed, support);
    const std::string text = emit_dblcat(*t);
    if (a.out.empty())
        out << text;
    else
        write_file(a.out, text);
    return exit_pass;
}

int cmd_compose(const Args& a, std::ostream& out)
{
    if (a.positional.size() != 2)
        throw InputError("compose takes two names, first then second");
    const std::string& first = a.positional[0];
    const std::string& second = a.positional[1];
    if (!a.dbl.empty()) {
        auto t = parse_dblcat(read_file(a.dbl), a.dbl);
        auto p = t->parse_pro(first);
        auto q = t->parse_pro(second);
        if (!p || !q)
            throw InputError("unknown proarrow " + (p ? second : first));
        if (p->tgt != q->src)
            throw InputError("proarrows are not composable");
        auto r = t->hcomp(*p, *q);
        if (!r) {
            out << "no composite of " << first << " and " << second << " in the table\n";
            return exit_fail;
        }
        out << t->pro_name(*r) << '\n';
        return exit_pass;
    }
    if (a.category.empty())
        throw InputError("compose needs --category or --double");
    auto c = load_category(a.category);
    auto f = c->parse_arrow(first);
    auto g = c->parse_arrow(second);
    if (!f || !g)
        throw InputError("unknown morphism " + (f ? second : first));
    if (f->tgt != g->src)
        throw InputError("morphisms are not composable");
    out << c->arrow_name(c->compose(*g, *f)) << '\n';
    return exit_pass;
}

int cmd_factorize(const Args& a, std::ostream& out)
{
    if (a.category.empty())
        throw InputError("factorize needs --category");
    const auto t0 = std::chrono::steady_clock::now();
    auto c = load_category(a.category);
    auto fs = load_fs_for(a, *c, a.category);
    if (a.positional.size() == 1) {
        auto f = c->parse_arrow(a.positional[0]);
        if (!f)
            throw InputError("unknown morphism " + a.positional[0]);
        auto ef = fs->factorize(*f);
        if (!ef) {
            out << "no factorization of " << a.positional[0] << '\n';
            return exit_fail;
        }
        out << c->arrow_name(*f) << " = " << c->arrow_name(ef->e) << " ; " << c->arrow_name(ef->m) << '\n';
        return exit_pass;
    }
    if (!a.positional.empty())
        throw InputError("factorize takes at most one morphism");
    ReportDocument doc;
    doc.subject = a.category + " with " + fs->name();
    doc.sections.push_back({"fs", fs_report_as_audit(check_factorization_system(*fs), *c, doc.subject)});
    doc.seconds = since(t0);
    emit(a, doc, out);
    return result(doc);
}

int cmd_derive_fs(const Args& a, std::ostream& out, std::ostream& err)
{
    Subject s = load_subject(a);
    Auditor au(s.d(), audit_options(a, s));
    DerivedFS r = au.derive();
    if (!r.error.empty() || !r.fs) {
        err << "derive-fs: " << (r.error.empty() ? "no factorization system" : r.error) << '\n';
        return exit_fail;
    }
    const std::string text = emit_fs(*r.fs);
    if (a.out.empty())
        out << text;
    else
        write_file(a.out, text);
    for (const FsClause* c : r.report.clauses()) {
        err << c->name << ' ' << to_string(c->verdict);
        if (!c->detail.empty())
            err << "  " << c->detail;
        err << '\n';
    }
    return r.report.ok() ? exit_pass : exit_fail;
}

int cmd_report(const Args& a, std::ostream& out, std::ostream& err)
{
    if (a.positional.size() != 1)
        throw InputError("report takes one .dblrep file");
    ReportDocument doc = parse_dblrep(read_file(a.positional[0]), a.positional[0]);
    bool replay_ok = true;
    if (!a.dbl.empty() || !a.category.empty()) {
        Subject s = load_subject(a);
        Auditor au(s.d(), audit_options(a, s));
        std::unique_ptr<EquivalenceChecker> eq;
        for (const auto& sec : doc.sections)
            for (const auto& c : sec.report.conditions) {
                if (!c.witness)
                    continue;
                std::string why;
                bool ok = false;
                if (sec.kind == "audit") {
                    ok = au.replay(*c.witness, &why);
                } else if (sec.kind == "equivalence") {
                    if (!eq)
                        eq = std::make_unique<EquivalenceChecker>(s.d(), audit_options(a, s));
                    ok = eq->replay(*c.witness, &why);
                } else if (sec.kind == "fs" && s.fs) {
                    ok = replay_fs_witness(*s.fs, *c.witness, &why);
                } else {
                    why = "no replay for section " + sec.kind;
                }
                err << "replay " << c.witness->id << ' ' << c.witness->condition << ": "
                    << (ok ? "reproduced" : "not reproduced (" + why + ")") << '\n';
                replay_ok = replay_ok && ok;
            }
    }
    emit(a, doc, out);
    if (!replay_ok)
        return exit_input;
    return result(doc);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Args a;
    if (const char* budget = std::getenv("RELCHECK_BUDGET"); budget && *budget) {
        char* end = nullptr;
        const long v = std::strtol(budget, &end, 10);
        if (*end != '\0' || v < 0) {
            err << "RELCHECK_BUDGET must be a non-negative integer\n";
            return exit_input;
        }
        a.max_size = static_cast<int>(v);
    }

    CLI::App app{"relcheck: audits double categories of relations", "relcheck"};
    app.require_subcommand(1);
    auto common = [&](CLI::App* sub) {
        sub->add_option("--category", a.category, "finset(N) or a .fcat file");
        sub->add_option("--fs", a.fs, "epimono or a .fs file");
        sub->add_option("--double", a.dbl, "a .dblcat file");
        sub->add_option("--max-size", a.max_size, "largest object id in the support")->check(CLI::NonNegativeNumber);
        sub->add_flag("--exhaustive", a.exhaustive, "never sample");
        sub->add_option("--samples", a.samples, "instances drawn when sampling");
        sub->add_option("--seed", a.seed, "sampling seed");
        sub->add_option("--format", a.format, "text or dblrep")->check(CLI::IsMember({"text", "dblrep"}));
        sub->add_option("--out", a.out, "output file");
        return sub;
    };
    auto* audit_cmd = common(app.add_subcommand("audit", "audit the characterization conditions"));
    auto* build_cmd = common(app.add_subcommand("build-rel", "tabulate Rel(C; F) as a .dblcat"));
    auto* compose_cmd = common(app.add_subcommand("compose", "compose two morphisms or proarrows"));
    compose_cmd->add_option("names", a.positional, "first, then second")->expected(2);
    auto* factorize_cmd = common(app.add_subcommand("factorize", "factor a morphism or check the system"));
    factorize_cmd->add_option("morphism", a.positional)->expected(0, 1);
    auto* derive_cmd = common(app.add_subcommand("derive-fs", "derive (covers, inclusions)"));
    auto* equiv_cmd = common(app.add_subcommand("equivalence", "compare with Rel of the ambient system"));
    auto* report_cmd = common(app.add_subcommand("report", "render and replay a .dblrep"));
    report_cmd->add_option("file", a.positional)->expected(1);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err) == 0 ? exit_pass : exit_input;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_input;
    }

    try {
        if (audit_cmd->parsed())
            return cmd_audit(a, out);
        if (build_cmd->parsed())
            return cmd_build_rel(a, out);
        if (compose_cmd->parsed())
            return cmd_compose(a, out);
        if (factorize_cmd->parsed())
            return cmd_factorize(a, out);
        if (derive_cmd->parsed())
            return cmd_derive_fs(a, out, err);
        if (equiv_cmd->parsed())
            return cmd_equivalence(a, out);
        if (report_cmd->parsed())
            return cmd_report(a, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}

}  // namespace relcheck
