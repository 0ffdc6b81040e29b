#include "relcheck/report.hpp"

#include "relcheck/formats.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace relcheck {

namespace {

bool same_conditions(const ConditionResult& a, const ConditionResult& b)
{
    return a.name == b.name && a.verdict == b.verdict && a.exhaustive == b.exhaustive && a.witness == b.witness;
}

std::optional<Verdict> parse_verdict(std::string_view s)
{
    if (s == "pass")
        return Verdict::pass;
    if (s == "fail")
        return Verdict::fail;
    if (s == "skip")
        return Verdict::skip;
    return std::nullopt;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    return s;
}

// "key=value" fields split on single spaces.
std::map<std::string, std::string> fields(std::string_view line)
{
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(line)};
    std::string w;
    while (in >> w) {
        auto eq = w.find('=');
        if (eq == std::string::npos)
            out.emplace(w, "");
        else
            out.emplace(w.substr(0, eq), w.substr(eq + 1));
    }
    return out;
}

}  // namespace

bool operator==(const ReportSection& a, const ReportSection& b)
{
    if (a.kind != b.kind || a.report.conditions.size() != b.report.conditions.size())
        return false;
    for (std::size_t i = 0; i < a.report.conditions.size(); ++i)
        if (!same_conditions(a.report.conditions[i], b.report.conditions[i]))
            return false;
    return true;
}

bool ReportDocument::ok() const
{
    return std::all_of(sections.begin(), sections.end(), [](const ReportSection& s) { return s.report.ok(); });
}

const ReportSection* ReportDocument::find(std::string_view kind) const
{
    for (const auto& s : sections)
        if (s.kind == kind)
            return &s;
    return nullptr;
}

std::string emit_dblrep(const ReportDocument& doc)
{
    std::ostringstream os;
    os << "relcheck-report 1\n";
    os << "subject " << doc.subject << '\n';
    for (const auto& s : doc.sections) {
        os << "section " << s.kind << '\n';
        for (const auto& c : s.report.conditions) {
            os << "condition=" << c.name << " verdict=" << to_string(c.verdict)
               << " exhaustive=" << (c.exhaustive ? "yes" : "no")
               << " witness=" << (c.witness ? c.witness->id : "-") << '\n';
        }
        for (const auto& c : s.report.conditions) {
            if (!c.witness)
                continue;
            os << "witness " << c.witness->id << " condition=" << c.witness->condition << '\n';
            for (const auto& item : c.witness->items)
                os << "  " << item.kind << ' ' << item.text << '\n';
            os << "end\n";
        }
    }
    return os.str();
}

ReportDocument parse_dblrep(std::string_view text, const std::string& source)
{
    ReportDocument doc;
    std::vector<std::string> lines;
    {
        std::string all(text);
        std::istringstream in(all);
        std::string l;
        while (std::getline(in, l))
            lines.push_back(l);
    }
    if (lines.empty() || trim(lines[0]) != "relcheck-report 1")
        throw ParseError(source, 1, "expected `relcheck-report 1`");

    ReportSection* section = nullptr;
    std::map<std::string, std::size_t> pending;  // witness id -> condition index, per section
    auto close_section = [&](int line) {
        if (section && !pending.empty())
            throw ParseError(source, line, "witness " + pending.begin()->first + " has no block");
        pending.clear();
    };
    bool have_subject = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const int number = static_cast<int>(i) + 1;
        std::string_view l = trim(lines[i]);
        if (l.empty() || l.front() == '#')
            continue;
        if (l.substr(0, 8) == "subject ") {
            doc.subject = std::string(trim(l.substr(8)));
            have_subject = true;
        } else if (l.substr(0, 8) == "section ") {
            close_section(number);
            doc.sections.push_back({std::string(trim(l.substr(8))), {}});
            section = &doc.sections.back();
            section->report.subject = doc.subject;
        } else if (l.substr(0, 10) == "condition=") {
            if (!section)
                throw ParseError(source, number, "condition outside a section");
            auto f = fields(l);
            ConditionResult c;
            c.name = f["condition"];
            auto v = parse_verdict(f["verdict"]);
            if (c.name.empty() || !v || !f.count("exhaustive") || !f.count("witness"))
                throw ParseError(source, number, "malformed condition record");
            c.verdict = *v;
            if (f["exhaustive"] != "yes" && f["exhaustive"] != "no")
                throw ParseError(source, number, "exhaustive must be yes or no");
            c.exhaustive = f["exhaustive"] == "yes";
            if (f["witness"] != "-") {
                if (!pending.emplace(f["witness"], section->report.conditions.size()).second)
                    throw ParseError(source, number, "duplicate witness id " + f["witness"]);
            }
            section->report.conditions.push_back(std::move(c));
        } else if (l.substr(0, 8) == "witness ") {
            if (!section)
                throw ParseError(source, number, "witness outside a section");
            auto f = fields(l.substr(8));
            std::string id;
            for (const auto& [k, v] : f)
                if (v.empty())
                    id = k;
            auto it = pending.find(id);
            if (it == pending.end())
                throw ParseError(source, number, "witness " + id + " is not referenced");
            Witness w{id, f["condition"], {}};
            std::size_t j = i + 1;
            for (; j < lines.size(); ++j) {
                std::string_view item = trim(lines[j]);
                if (item == "end")
                    break;
                if (item.empty())
                    continue;
                auto sp = item.find(' ');
                if (sp == std::string_view::npos)
                    throw ParseError(source, static_cast<int>(j) + 1, "witness item needs a kind and a text");
                w.items.push_back({std::string(item.substr(0, sp)), std::string(item.substr(sp + 1))});
            }
            if (j == lines.size())
                throw ParseError(source, number, "witness block without `end`");
            section->report.conditions[it->second].witness = std::move(w);
            pending.erase(it);
            i = j;
        } else {
            throw ParseError(source, number, "unrecognized line");
        }
    }
    close_section(static_cast<int>(lines.size()));
    if (!have_subject)
        throw ParseError(source, 0, "missing subject line");
    return doc;
}

std::string emit_text(const ReportDocument& doc, bool timing)
{
    std::ostringstream os;
    os << "subject: " << doc.subject << '\n';
    for (const auto& s : doc.sections) {
        const auto& r = s.report;
        os << '\n' << s.kind << '\n';
        std::size_t width = 0;
        for (const auto& c : r.conditions)
            width = std::max(width, c.name.size());
        for (const auto& c : r.conditions) {
            std::string verdict = to_string(c.verdict);
            if (c.verdict == Verdict::pass && !c.exhaustive)
                verdict = "pass (sampled)";
            char counts[64];
            std::snprintf(counts, sizeof counts, "%llu checked", static_cast<unsigned long long>(c.checked));
            os << "  " << c.name << std::string(width - c.name.size() + 2, ' ') << verdict;
            if (s.kind != "fs")
                os << std::string(verdict.size() < 16 ? 16 - verdict.size() : 1, ' ') << counts;
            if (c.skipped)
                os << ", " << c.skipped << " skipped";
            if (c.witness)
                os << "  [" << c.witness->id << ']';
            os << '\n';
            if (!c.detail.empty() && c.verdict != Verdict::pass)
                os << "      " << c.detail << '\n';
        }
        if (!r.covers.empty() || !r.inclusions.empty()) {
            os << "  covers:";
            for (const auto& f : r.covers)
                os << ' ' << f;
            os << "\n  inclusions:";
            for (const auto& f : r.inclusions)
                os << ' ' << f;
            os << '\n';
        }
        for (const auto& c : r.conditions) {
            if (!c.witness)
                continue;
            os << "  witness " << c.witness->id << " (" << c.witness->condition << ")\n";
            for (const auto& item : c.witness->items)
                os << "    " << item.kind << ' ' << item.text << '\n';
        }
    }
    os << '\n' << (doc.ok() ? "result: pass" : "result: fail") << '\n';
    if (timing) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "elapsed: %.3f s\n", doc.seconds);
        os << buf;
    }
    return os.str();
}

AuditReport fs_report_as_audit(const FsReport& r, const Category& c, const std::string& subject)
{
    AuditReport out;
    out.subject = subject;
    int next = 1;
    for (const FsClause* clause : r.clauses()) {
        ConditionResult cr;
        cr.name = clause->name;
        cr.verdict = clause->verdict;
        cr.detail = clause->detail;
        if (clause->verdict == Verdict::fail && !clause->witnesses.empty()) {
            Witness w{"w" + std::to_string(next++), clause->name, {}};
            for (const Arrow& f : clause->witnesses.front())
                w.items.push_back({"arrow", c.arrow_name(f)});
            cr.witness = std::move(w);
        }
        out.conditions.push_back(std::move(cr));
    }
    return out;
}

bool replay_fs_witness(const FactorizationSystem& fs, const Witness& w, std::string* why)
{
    auto say = [&](const std::string& s) {
        if (why)
            *why = s;
        return false;
    };
    const Category& c = fs.category();
    std::vector<Arrow> arrows;
    for (const auto& item : w.items) {
        if (item.kind != "arrow")
            return say("unexpected item kind " + item.kind);
        auto f = c.parse_arrow(item.text);
        if (!f)
            return say("unknown arrow " + item.text);
        arrows.push_back(*f);
    }
    const FsReport r = check_factorization_system(fs);
    for (const FsClause* clause : r.clauses()) {
        if (clause->name != w.condition)
            continue;
        if (clause->verdict != Verdict::fail)
            return say(clause->name + " passes");
        if (std::find(clause->witnesses.begin(), clause->witnesses.end(), arrows) == clause->witnesses.end())
            return say("instance is not among the violations of " + clause->name);
        return true;
    }
    return say("unknown clause " + w.condition);
}

}  // namespace relcheck
