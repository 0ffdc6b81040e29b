#include "doctest.h"

#include "relcheck/equivalence.hpp"
#include "relcheck/formats.hpp"
#include "relcheck/report.hpp"
#include "relcheck/table_double.hpp"

#include "generators.hpp"

using namespace relcheck;

namespace {

ReportDocument doc_of(const std::string& kind, AuditReport r)
{
    ReportDocument d;
    d.subject = r.subject;
    d.sections.push_back({kind, std::move(r)});
    return d;
}

// A random report: conditions with random verdicts, witnesses on the failures.
ReportDocument random_report(testing::Gen& gen)
{
    ReportDocument d;
    d.subject = "random subject " + std::to_string(gen.size(0, 999));
    const int sections = gen.size(1, 3);
    int wid = 0;
    for (int s = 0; s < sections; ++s) {
        AuditReport r;
        const int n = gen.size(0, 6);
        for (int i = 0; i < n; ++i) {
            ConditionResult c;
            c.name = "cond-" + std::to_string(s) + "-" + std::to_string(i);
            c.verdict = static_cast<Verdict>(gen.size(0, 2));
            c.exhaustive = gen.size(0, 1) == 1;
            if (c.verdict == Verdict::fail) {
                Witness w{"w" + std::to_string(++wid), c.name, {}};
                const int items = gen.size(0, 4);
                for (int k = 0; k < items; ++k)
                    w.items.push_back({k % 2 ? "note" : "arrow", "text with  spaces " + std::to_string(k)});
                c.witness = std::move(w);
            }
            r.conditions.push_back(std::move(c));
        }
        d.sections.push_back({s == 0 ? "audit" : "equivalence", std::move(r)});
    }
    return d;
}

}  // namespace

TEST_CASE("an all-pass report has no witness blocks")
{
    auto d = rel_finset(1);
    auto doc = doc_of("audit", audit(*d));
    REQUIRE(doc.ok());
    const std::string text = emit_dblrep(doc);
    CHECK(text.find("\nwitness ") == std::string::npos);
    CHECK(text.find("witness=w") == std::string::npos);
    CHECK(text.find("condition=frobenius verdict=pass exhaustive=yes witness=-\n") != std::string::npos);
}

TEST_CASE("a failing report carries replayable blocks")
{
    auto t = deleted_companion_control();
    auto doc = doc_of("audit", audit(*t));
    REQUIRE_FALSE(doc.ok());
    const std::string text = emit_dblrep(doc);
    CHECK(text.find("condition=equipment verdict=fail exhaustive=yes witness=w1\n") != std::string::npos);
    CHECK(text.find("witness w1 condition=equipment\n  arrow ab\n") != std::string::npos);
    auto back = parse_dblrep(text);
    const auto* eq = back.sections.at(0).report.find("equipment");
    REQUIRE(eq);
    REQUIRE(eq->witness);
    Auditor a(*t);
    CHECK(a.replay(*eq->witness));
}

TEST_CASE("dblrep round trip on random reports")
{
    testing::Gen gen(17);
    for (int i = 0; i < 200; ++i) {
        auto doc = random_report(gen);
        const std::string text = emit_dblrep(doc);
        auto back = parse_dblrep(text);
        CHECK(back.subject == doc.subject);
        CHECK(back.sections == doc.sections);
        CHECK(emit_dblrep(back) == text);
    }
}

TEST_CASE("dblrep round trip on an equivalence report")
{
    auto t = deleted_companion_control();
    EquivalenceChecker eq(*t);
    auto doc = doc_of("equivalence", eq.run());
    auto back = parse_dblrep(emit_dblrep(doc));
    CHECK(back.sections == doc.sections);
    const auto* c = back.sections[0].report.find("equivalence");
    REQUIRE(c);
    REQUIRE(c->witness);
    CHECK(eq.replay(*c->witness));
}

TEST_CASE("dblrep parse errors")
{
    auto line = [](const std::string& text) {
        try {
            parse_dblrep(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line("nope\n") == 1);
    CHECK(line("relcheck-report 1\nsubject s\ncondition=a verdict=pass exhaustive=yes witness=-\n") == 3);
    CHECK(line("relcheck-report 1\nsubject s\nsection audit\ncondition=a verdict=maybe exhaustive=yes witness=-\n") ==
          4);
    CHECK(line("relcheck-report 1\nsubject s\nsection audit\ncondition=a verdict=fail exhaustive=yes witness=w1\n") ==
          4);
    CHECK(line("relcheck-report 1\nsubject s\nsection audit\nwitness w9 condition=a\nend\n") == 4);
    CHECK(line("relcheck-report 1\nsubject s\nsection audit\n"
               "condition=a verdict=fail exhaustive=yes witness=w1\nwitness w1 condition=a\n  note x\n") == 5);
}

TEST_CASE("dblrep output is byte identical across runs")
{
    AuditOptions o;
    o.instance_limit = 200;
    o.samples = 100;
    o.seed = 42;
    auto d = rel_finset(2);
    const std::string a = emit_dblrep(doc_of("audit", audit(*d, o)));
    const std::string b = emit_dblrep(doc_of("audit", audit(*d, o)));
    CHECK(a == b);
    CHECK(a.find("exhaustive=no") != std::string::npos);
}

TEST_CASE("fs checks as report sections")
{
    FinSetCategory c(2);
    auto fs = all_iso(c);
    auto r = fs_report_as_audit(check_factorization_system(fs), c, "all-iso");
    CHECK(r.failed() == std::vector<std::string>{"properness"});
    const auto* p = r.find("properness");
    REQUIRE(p->witness);
    CHECK(replay_fs_witness(fs, *p->witness));
    Witness other = *p->witness;
    other.items = {{"arrow", "[1,2]:2->2"}};
    CHECK_FALSE(replay_fs_witness(fs, other));
    auto em = EpiMonoFS(c);
    CHECK_FALSE(replay_fs_witness(em, *p->witness));
}

TEST_CASE("text format marks sampled passes")
{
    AuditOptions o;
    o.only = {"frobenius"};
    o.instance_limit = 10;
    o.samples = 5;
    auto d = rel_finset(2);
    auto doc = doc_of("audit", audit(*d, o));
    const std::string text = emit_text(doc, false);
    CHECK(text.find("pass (sampled)") != std::string::npos);
    CHECK(text.find("elapsed") == std::string::npos);
}
