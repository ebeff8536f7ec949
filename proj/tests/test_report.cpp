#include <doctest.h>

#include <filesystem>

#include "solnscope/dsl.hpp"
#include "solnscope/report.hpp"
#include "support.hpp"

using namespace solnscope;

namespace {

std::vector<std::string> stems() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(testing::source_path("specs"))) out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("text reports match the committed goldens") {
    auto all = stems();
    CHECK(all.size() == 12);
    for (const auto& s : all) {
        CAPTURE(s);
        std::string text = render_text(run_report(testing::load_spec(s)));
        CHECK(text == testing::read_file(testing::source_path("goldens/" + s + ".txt")));
    }
}

TEST_CASE("reports are deterministic") {
    for (const auto& s : stems()) {
        ProblemSpec spec = testing::load_spec(s);
        RunOptions o;
        o.seed = 17;
        CHECK(render_json(run_report(spec, o)).dump() == render_json(run_report(spec, o)).dump());
        CHECK(render_text(run_report(spec)) == render_text(run_report(spec)));
    }
}

TEST_CASE("every verdict row resolves to a certificate object") {
    for (const auto& s : stems()) {
        CAPTURE(s);
        auto doc = run_report(testing::load_spec(s));
        auto j = render_json(doc);
        for (const auto& row : j["rows"]) {
            if (!row["verdict"].is_boolean()) continue;
            std::string id = row["certificate"].get<std::string>();
            CHECK(j["certificates"].contains(id));
            CHECK(j["certificates"][id].is_object());
        }
    }
}

TEST_CASE("checks restrict the rows") {
    ProblemSpec spec = testing::load_spec("p1_ex3");
    spec.checks = {"uniqueness"};
    auto doc = run_report(spec);
    REQUIRE_FALSE(doc.rows.empty());
    for (const auto& r : doc.rows) CHECK(r.group == "uniqueness");
    CHECK(doc.find("existence") == nullptr);
    CHECK(doc.find("uniqueness") != nullptr);
}

TEST_CASE("failures inside a diagnostic become undecidable rows") {
    // f is not bounded below along ker A and no exact route exists for the multi-row nonpolyhedral case
    ProblemSpec spec = parse_spec("kind = regularized\nfunction = exp(x1) + exp(x2)\nA = [[1,0],[0,1]]\nb = [1,1]\n");
    auto doc = run_report(spec);
    bool any = false;
    for (const auto& r : doc.rows)
        if (r.undecidable) {
            any = true;
            CHECK(r.value.rfind("undecidable: ", 0) == 0);
        }
    CHECK(any == doc.undecidable());
}

TEST_CASE("sampled rows appear only with a seed") {
    ProblemSpec spec = testing::load_spec("p1_ex4");
    CHECK(run_report(spec).find("samples") == nullptr);
    RunOptions o;
    o.seed = 3;
    auto doc = run_report(spec, o);
    const ReportRow* r = doc.find("samples");
    REQUIRE(r);
    REQUIRE(r->verdict);
    CHECK(*r->verdict);
}

TEST_CASE("oracle agreement section") {
    RunOptions o;
    o.oracle_verify = true;
    auto doc = run_report(testing::load_spec("lasso"), o);
    REQUIRE(doc.oracle.size() >= 2);
    CHECK(doc.oracle[0].find("agrees with exact: yes") != std::string::npos);
    CHECK(doc.oracle[1].find("agrees within 1e-6: yes") != std::string::npos);
}

}
