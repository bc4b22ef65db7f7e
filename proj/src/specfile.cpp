#include "steerkit/specfile.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace steerkit {

using nlohmann::json;

namespace {

[[noreturn]] void schema_fail(const std::string& msg) {
    throw spec_error(SpecErrorCode::schema, "schema violation: " + msg);
}

double need_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        schema_fail(std::string("missing or non-numeric field '") + key + "'");
    return j[key].get<double>();
}

int need_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        schema_fail(std::string("missing or non-integer field '") + key + "'");
    return j[key].get<int>();
}

DensityOperator single_mode_from_json(const json& j, int n_max) {
    const BipartiteBasis bb = single_mode(n_max);
    if (j.contains("diag")) {
        const auto& d = j["diag"];
        if (!d.is_array() || int(d.size()) != n_max + 1)
            schema_fail("'diag' must list n_max + 1 entries");
        RealVector v(n_max + 1);
        for (int i = 0; i <= n_max; ++i) v(i) = d[size_t(i)].get<double>();
        Matrix m = v.cast<Complex>().asDiagonal();
        return DensityOperator(bb, std::move(m));
    }
    schema_fail("single-mode factor must provide 'diag'");
}

std::vector<Amplitude> parse_amplitudes(const json& j) {
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array() ||
        j["amplitudes"].empty())
        schema_fail("'amplitudes' must be a non-empty array");
    std::vector<Amplitude> out;
    for (const auto& a : j["amplitudes"]) {
        Amplitude amp;
        amp.i_a = need_int(a, "n_a");
        amp.i_b = need_int(a, "n_b");
        const double re = need_number(a, "re");
        const double im = a.contains("im") ? need_number(a, "im") : 0.0;
        amp.value = Complex(re, im);
        out.push_back(amp);
    }
    return out;
}

DensityOperator build_state(const json& state, const BipartiteBasis& basis);

DensityOperator build_mixture(const json& state, const BipartiteBasis& basis) {
    if (!state.contains("terms") || !state["terms"].is_array() ||
        state["terms"].empty())
        schema_fail("'terms' must be a non-empty array");
    std::vector<std::pair<double, DensityOperator>> terms;
    double wsum = 0.0;
    for (const auto& t : state["terms"]) {
        const double w = need_number(t, "weight");
        wsum += w;
        if (!t.contains("state")) schema_fail("mixture term needs 'state'");
        terms.emplace_back(w, build_state(t["state"], basis));
    }
    if (std::abs(wsum - 1.0) > kTol) schema_fail("term weights must sum to 1");
    return mixture(terms);
}

DensityOperator build_separable(const json& state, const BipartiteBasis& basis) {
    if (!state.contains("terms") || !state["terms"].is_array() ||
        state["terms"].empty())
        schema_fail("'terms' must be a non-empty array");
    SeparableSpec spec;
    double wsum = 0.0;
    for (const auto& t : state["terms"]) {
        const double w = need_number(t, "weight");
        wsum += w;
        if (!t.contains("rho_a") || !t.contains("rho_b"))
            schema_fail("separable term needs 'rho_a' and 'rho_b'");
        spec.terms.push_back({w, single_mode_from_json(t["rho_a"], basis.n_max_a),
                              single_mode_from_json(t["rho_b"], basis.n_max_b)});
    }
    if (std::abs(wsum - 1.0) > kTol) schema_fail("term weights must sum to 1");
    return separable_state(basis, spec);
}

DensityOperator build_state(const json& state, const BipartiteBasis& basis) {
    if (!state.contains("kind") || !state["kind"].is_string())
        schema_fail("state needs a string 'kind'");
    const std::string kind = state["kind"].get<std::string>();
    if (kind == "pure") return pure_state(basis, parse_amplitudes(state));
    if (kind == "mixture") return build_mixture(state, basis);
    if (kind == "separable") return build_separable(state, basis);
    if (kind == "tmsv")
        return two_mode_squeezed_vacuum(basis, need_number(state, "r"));
    schema_fail("unknown state kind '" + kind + "'");
}

}  // namespace

StateSpec parse_state_spec_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw spec_error(SpecErrorCode::syntax, std::string("syntax error: ") + e.what());
    }

    if (!j.is_object()) schema_fail("top level must be an object");
    const int version = j.contains("schema_version") ? need_int(j, "schema_version") : 0;
    if (version != 1) schema_fail("unsupported schema_version (expected 1)");
    if (!j.contains("state") || !j["state"].is_object())
        schema_fail("missing 'state' object");
    const json& state = j["state"];
    if (!state.contains("kind") || !state["kind"].is_string())
        schema_fail("state needs a string 'kind'");
    const std::string kind = state["kind"].get<std::string>();

    try {
        std::optional<StateSpec> spec;
        if (kind == "werner") {
            WernerSpec w{need_int(state, "d"), need_number(state, "eta")};
            spec.emplace(werner_state(w));
            spec->werner = w;
        } else {
            if (!j.contains("basis") || !j["basis"].is_object())
                schema_fail("missing 'basis' object");
            BipartiteBasis basis = BipartiteBasis::fock(
                need_int(j["basis"], "n_max_a"), need_int(j["basis"], "n_max_b"));
            spec.emplace(build_state(state, basis));
        }
        spec->kind = kind;
        spec->schema_version = version;
        if (j.contains("options")) {
            const json& o = j["options"];
            if (o.contains("epsilon")) spec->options.epsilon = need_number(o, "epsilon");
            if (o.contains("theta_points"))
                spec->options.theta_points = need_int(o, "theta_points");
            if (o.contains("steered")) {
                const std::string s = o["steered"].get<std::string>();
                if (s == "A")
                    spec->steered = Steered::A;
                else if (s == "B")
                    spec->steered = Steered::B;
                else
                    schema_fail("options.steered must be 'A' or 'B'");
            }
        }
        // normalized echo
        json canon;
        canon["schema_version"] = 1;
        if (j.contains("basis")) canon["basis"] = j["basis"];
        canon["state"] = state;
        if (j.contains("options")) canon["options"] = j["options"];
        spec->raw = std::move(canon);
        return std::move(*spec);
    } catch (const spec_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw spec_error(SpecErrorCode::precondition,
                         std::string("precondition failure: ") + e.what());
    }
}

StateSpec parse_state_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw spec_error(SpecErrorCode::io, "cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_state_spec_text(ss.str());
}

std::string fmt_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

const char* steered_tag(const std::optional<Steered>& s) {
    if (!s) return "-";
    return *s == Steered::B ? "B" : "A";
}

const char* ssr_tag(SsrStatus s) {
    switch (s) {
        case SsrStatus::global_compliant: return "global_compliant";
        case SsrStatus::noncompliant: return "noncompliant";
        case SsrStatus::unchecked: return "unchecked";
    }
    return "?";
}

}  // namespace

ReportResult run_report(const StateSpec& spec, ReportFormat format) {
    std::ostringstream out;

    if (spec.kind == "werner") {
        const WernerSpec& w = *spec.werner;
        const Category cat = werner_classify(w.d, w.eta);
        if (format == ReportFormat::tree) {
            out << "report\n";
            out << "  spec: " << spec.canonical().dump() << "\n";
            out << "  state\n";
            out << "    kind: werner\n";
            out << "    d: " << w.d << "\n";
            out << "    eta: " << fmt_float(w.eta) << "\n";
            out << "    phi: " << fmt_float(w.phi()) << "\n";
            out << "    category: " << category_name(cat) << "\n";
            out << "  witnesses: skipped (Werner states live on a qudit basis; "
                   "bosonic witnesses need a Fock basis)\n";
            out << "  summary: not_applicable\n";
        } else {
            out << "field,value\n";
            out << "kind,werner\n";
            out << "d," << w.d << "\n";
            out << "eta," << fmt_float(w.eta) << "\n";
            out << "phi," << fmt_float(w.phi()) << "\n";
            out << "category," << category_name(cat) << "\n";
            out << "witnesses,skipped\n";
        }
        return {out.str(), 0};
    }

    WitnessReport rep = evaluate_all(spec.state, spec.options);
    if (spec.steered) {
        // drop records for the side the caller excluded, then re-aggregate
        std::vector<TestRecord> kept;
        for (auto& r : rep.records)
            if (!r.steered || *r.steered == *spec.steered)
                kept.push_back(std::move(r));
        rep.records = std::move(kept);
        rep.summary = Verdict::inconclusive;
        for (const auto& r : rep.records) {
            if (r.verdict == Verdict::steerable) {
                rep.summary = Verdict::steerable;
                break;
            }
            if (r.verdict == Verdict::entangled) rep.summary = Verdict::entangled;
        }
    }

    if (format == ReportFormat::tree) {
        out << "report\n";
        out << "  spec: " << spec.canonical().dump() << "\n";
        out << "  state\n";
        out << "    kind: " << spec.kind << "\n";
        out << "    dim: " << spec.state.basis().dim() << "\n";
        out << "    ssr: " << ssr_tag(spec.state.ssr_status()) << "\n";
        if (rep.ssr_warning)
            out << "    warning: state breaks the global super-selection rule; "
                   "SSR-based simplifications do not apply\n";
        out << "  tests\n";
        for (const auto& r : rep.records) {
            out << "    " << r.name;
            if (r.steered) out << " (steered " << steered_tag(r.steered) << ")";
            out << "\n";
            out << "      value: " << fmt_float(r.value) << "\n";
            out << "      bound: " << fmt_float(r.bound) << "\n";
            out << "      margin: " << fmt_float(r.margin) << "\n";
            out << "      verdict: " << verdict_name(r.verdict) << "\n";
            for (const auto& [k, v] : r.extras)
                out << "      " << k << ": " << fmt_float(v) << "\n";
        }
        out << "  summary: " << verdict_name(rep.summary) << "\n";
    } else {
        out << "test,steered,value,bound,margin,verdict\n";
        for (const auto& r : rep.records)
            out << r.name << "," << steered_tag(r.steered) << "," << fmt_float(r.value)
                << "," << fmt_float(r.bound) << "," << fmt_float(r.margin) << ","
                << verdict_name(r.verdict) << "\n";
        out << "summary,-,,,," << verdict_name(rep.summary) << "\n";
    }

    int code = 4;
    if (rep.summary == Verdict::steerable)
        code = 2;
    else if (rep.summary == Verdict::entangled)
        code = 3;
    return {out.str(), code};
}

std::vector<SweepRow> sweep_werner(int d, const std::vector<double>& grid) {
    if (grid.empty())
        throw std::invalid_argument("sweep_werner: empty grid");
    std::vector<SweepRow> rows;
    for (double eta : grid) {
        const Category cat = werner_classify(d, eta);
        rows.push_back({eta, category_name(cat), WernerSpec{d, eta}.phi()});
    }
    return rows;
}

std::vector<SweepRow> sweep_genhz(const std::vector<double>& grid) {
    if (grid.empty())
        throw std::invalid_argument("sweep_genhz: empty grid");
    const BipartiteBasis basis = BipartiteBasis::fock(3, 3);
    const OperatorSet set = build_operator_set(basis);
    std::vector<SweepRow> rows;
    for (double alpha : grid) {
        DensityOperator rho = pure_state(
            basis, {{1, 0, std::cos(alpha)}, {0, 1, std::sin(alpha)}});
        TestRecord r = generalized_hz_test(rho, set, Steered::B);
        rows.push_back({alpha, verdict_name(r.verdict), r.value});
    }
    return rows;
}

std::string sweep_csv(const std::string& x_name, const std::string& value_name,
                      const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << x_name << ",label," << value_name << "\n";
    for (const auto& r : rows)
        out << fmt_float(r.x) << "," << r.label << "," << fmt_float(r.value) << "\n";
    return out.str();
}

}  // namespace steerkit
