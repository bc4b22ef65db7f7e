#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "steerkit/specfile.hpp"

using namespace steerkit;

namespace {

const char* kDemoSpec = R"({
  "schema_version": 1,
  "basis": { "n_max_a": 3, "n_max_b": 3 },
  "state": {
    "kind": "pure",
    "amplitudes": [
      { "n_a": 1, "n_b": 0, "re": 0.8660254037844386 },
      { "n_a": 0, "n_b": 1, "re": 0.5 }
    ]
  }
})";

const char* kSeparableSpec = R"({
  "schema_version": 1,
  "basis": { "n_max_a": 2, "n_max_b": 2 },
  "state": {
    "kind": "separable",
    "terms": [
      { "weight": 0.5, "rho_a": { "diag": [1, 0, 0] }, "rho_b": { "diag": [0, 1, 0] } },
      { "weight": 0.5, "rho_a": { "diag": [0, 1, 0] }, "rho_b": { "diag": [1, 0, 0] } }
    ]
  }
})";

}  // namespace

TEST_CASE("parsing: happy paths") {
    StateSpec demo = parse_state_spec_text(kDemoSpec);
    CHECK(demo.kind == "pure");
    CHECK(demo.state.basis().dim() == 16);
    CHECK(demo.state.ssr_status() == SsrStatus::global_compliant);

    StateSpec sep = parse_state_spec_text(kSeparableSpec);
    CHECK(sep.kind == "separable");

    StateSpec w = parse_state_spec_text(
        R"({"schema_version":1,"state":{"kind":"werner","d":3,"eta":0.9}})");
    CHECK(w.kind == "werner");
    REQUIRE(w.werner.has_value());
    CHECK(w.werner->d == 3);

    StateSpec t = parse_state_spec_text(
        R"({"schema_version":1,"basis":{"n_max_a":20,"n_max_b":20},
            "state":{"kind":"tmsv","r":0.5},"options":{"theta_points":8}})");
    CHECK(t.options.theta_points == 8);
    CHECK(t.state.ssr_status() == SsrStatus::noncompliant);
}

TEST_CASE("parsing: error taxonomy") {
    auto code_of = [](const std::string& text) {
        try {
            parse_state_spec_text(text);
        } catch (const spec_error& e) {
            return e.code;
        }
        return SpecErrorCode::io;  // no error seen
    };

    CHECK(code_of("{ not json") == SpecErrorCode::syntax);
    CHECK(code_of(R"({"schema_version":2,"state":{"kind":"pure"}})") ==
          SpecErrorCode::schema);
    CHECK(code_of(R"({"schema_version":1,"state":{"kind":"unknown"}})") ==
          SpecErrorCode::schema);

    // weight sum 0.9
    std::string bad_weights = R"({
      "schema_version": 1,
      "basis": { "n_max_a": 1, "n_max_b": 1 },
      "state": { "kind": "separable", "terms": [
        { "weight": 0.9, "rho_a": { "diag": [1, 0] }, "rho_b": { "diag": [1, 0] } }
      ]}})";
    CHECK(code_of(bad_weights) == SpecErrorCode::schema);

    // Werner phi out of [-1, 1]
    CHECK(code_of(R"({"schema_version":1,"state":{"kind":"werner","d":2,"eta":-2}})") ==
          SpecErrorCode::precondition);

    // tmsv truncation too small
    CHECK(code_of(R"({"schema_version":1,"basis":{"n_max_a":2,"n_max_b":2},
                      "state":{"kind":"tmsv","r":2.0}})") ==
          SpecErrorCode::precondition);

    CHECK_THROWS_AS(parse_state_spec("/nonexistent/steerkit-spec.json"), spec_error);
}

TEST_CASE("round trip and determinism") {
    StateSpec a = parse_state_spec_text(kDemoSpec);
    StateSpec b = parse_state_spec_text(a.canonical().dump());
    CHECK(a.canonical() == b.canonical());

    ReportResult r1 = run_report(a);
    ReportResult r2 = run_report(a);
    CHECK(r1.body == r2.body);
    CHECK(r1.exit_code == r2.exit_code);
}

TEST_CASE("report verdicts and exit codes") {
    ReportResult demo = run_report(parse_state_spec_text(kDemoSpec));
    CHECK(demo.exit_code == 2);
    CHECK(demo.body.find("generalized_hz") != std::string::npos);
    CHECK(demo.body.find("-0.0625") != std::string::npos);

    ReportResult sep = run_report(parse_state_spec_text(kSeparableSpec));
    CHECK(sep.exit_code == 4);
    CHECK(sep.body.find("summary: inconclusive") != std::string::npos);

    ReportResult w = run_report(parse_state_spec_text(
        R"({"schema_version":1,"state":{"kind":"werner","d":3,"eta":0.9}})"));
    CHECK(w.exit_code == 0);
    CHECK(w.body.find("Cat3_steerable") != std::string::npos);
    CHECK(w.body.find("skipped") != std::string::npos);

    // CSV format has one row per test
    ReportResult csv = run_report(parse_state_spec_text(kDemoSpec), ReportFormat::csv);
    CHECK(csv.body.rfind("test,steered,value,bound,margin,verdict\n", 0) == 0);
    CHECK(csv.exit_code == 2);
}

TEST_CASE("file ingestion") {
    const std::string path = "steerkit_test_spec.json";
    {
        std::ofstream out(path);
        out << kDemoSpec;
    }
    StateSpec spec = parse_state_spec(path);
    CHECK(spec.kind == "pure");
    std::remove(path.c_str());
}

TEST_CASE("sweeps") {
    std::vector<SweepRow> w = sweep_werner(2, {0.25, 0.45, 0.75});
    REQUIRE(w.size() == 3);
    CHECK(w[0].label == "Cat1_separable");
    CHECK(w[1].label == "Cat2_LHS_entangled");
    CHECK(w[2].label == "Cat3_or_4_steerable");

    std::vector<SweepRow> g = sweep_genhz({M_PI / 6.0, M_PI / 4.0, M_PI / 3.0});
    REQUIRE(g.size() == 3);
    CHECK(g[0].value == doctest::Approx(-0.0625).epsilon(1e-10));
    CHECK(std::abs(g[1].value) <= 1e-12);  // sign change at cos^2 = 1/2
    CHECK(g[2].value > 0.0);

    CHECK_THROWS_AS(sweep_werner(2, {}), std::invalid_argument);
    std::string csv = sweep_csv("eta", "phi", w);
    CHECK(csv.rfind("eta,label,phi\n", 0) == 0);

    // 17-significant-digit serialization is reproducible
    CHECK(fmt_float(1.0 / 3.0) == "0.33333333333333331");
}
