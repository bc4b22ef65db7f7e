#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "steerkit/certify.hpp"
#include "steerkit/specfile.hpp"

using namespace steerkit;

namespace {

ReportFormat parse_format(const std::string& f) {
    return f == "csv" ? ReportFormat::csv : ReportFormat::tree;
}

void apply_overrides(StateSpec& spec, const CLI::Option* eps_opt, double epsilon,
                     const CLI::Option* theta_opt, int theta_points,
                     const CLI::Option* steered_opt, const std::string& steered) {
    if (eps_opt->count()) spec.options.epsilon = epsilon;
    if (theta_opt->count()) spec.options.theta_points = theta_points;
    if (steered_opt->count()) spec.steered = steered == "A" ? Steered::A : Steered::B;
}

int emit_report(const StateSpec& spec, const std::string& format) {
    ReportResult res = run_report(spec, parse_format(format));
    std::cout << res.body;
    return res.exit_code;
}

std::vector<double> parse_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw CLI::ValidationError("--grid", "grid must be non-empty");
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "steerkit: two-mode bosonic steering/entanglement witnesses, Werner-state\n"
        "classification and Monte-Carlo certification of hidden-variable bounds.\n"
        "Report exit codes: 0 ran (no witness verdict applicable), 2 steerable,\n"
        "3 entangled only, 4 inconclusive; errors exit with codes >= 10."};
    app.require_subcommand(1);

    std::string format = "tree";
    double epsilon = 1e-9;
    int theta_points = 64;
    std::string steered = "B";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"tree", "csv"}));
    auto* eps_opt = app.add_option("--epsilon", epsilon, "Witness firing threshold");
    auto* theta_opt =
        app.add_option("--theta-points", theta_points, "Quadrature theta-grid size");
    auto* steered_opt = app.add_option("--steered", steered, "Steered subsystem")
                            ->check(CLI::IsMember({"A", "B"}));

    std::string report_path;
    auto* cmd_report = app.add_subcommand("report", "Evaluate a state spec file");
    cmd_report->add_option("file", report_path, "State spec file (JSON)")->required();

    int werner_d = 2;
    double werner_eta = 0.0;
    auto* cmd_werner = app.add_subcommand("werner", "Classify one Werner state");
    cmd_werner->add_option("--d", werner_d, "Qudit dimension")->required();
    cmd_werner->add_option("--eta", werner_eta, "Mixing parameter")->required();

    int sweep_d = 2;
    std::vector<double> grid;
    auto* cmd_sweep_w = app.add_subcommand("sweep-werner", "Classify a grid of eta");
    cmd_sweep_w->add_option("--d", sweep_d, "Qudit dimension")->required();
    cmd_sweep_w->add_option("--grid", grid, "Eta values")->required()->expected(-1);

    auto* cmd_sweep_g = app.add_subcommand(
        "sweep-genhz", "Generalized HZ value for cos(a)|1,0> + sin(a)|0,1>");
    cmd_sweep_g->add_option("--grid", grid, "Alpha values (radians)")
        ->required()
        ->expected(-1);

    std::string mc_kind;
    int mc_samples = 10000;
    std::uint64_t mc_seed = 0;
    bool mc_serial = false;
    auto* cmd_mc = app.add_subcommand("mc-certify",
                                      "Monte-Carlo certification of derived bounds");
    cmd_mc->add_option("--kind", mc_kind, "Model family")
        ->required()
        ->check(CLI::IsMember({"cat1", "cat2"}));
    cmd_mc->add_option("--samples", mc_samples, "Sample count")->required();
    cmd_mc->add_option("--seed", mc_seed, "RNG seed")->required();
    cmd_mc->add_flag("--serial", mc_serial, "Use the serial reference loop");

    auto* cmd_demo =
        app.add_subcommand("demo", "Report on the asymmetric steering demo state");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_report) {
            StateSpec spec = parse_state_spec(report_path);
            apply_overrides(spec, eps_opt, epsilon, theta_opt, theta_points,
                            steered_opt, steered);
            return emit_report(spec, format);
        }
        if (*cmd_werner) {
            StateSpec spec = parse_state_spec_text(
                nlohmann::json{{"schema_version", 1},
                               {"state", {{"kind", "werner"},
                                          {"d", werner_d},
                                          {"eta", werner_eta}}}}
                    .dump());
            return emit_report(spec, format);
        }
        if (*cmd_sweep_w) {
            std::cout << sweep_csv("eta", "phi", sweep_werner(sweep_d, parse_grid(grid)));
            return 0;
        }
        if (*cmd_sweep_g) {
            std::cout << sweep_csv("alpha", "gen_hz_value",
                                   sweep_genhz(parse_grid(grid)));
            return 0;
        }
        if (*cmd_mc) {
            const ExecPolicy policy =
                mc_serial ? ExecPolicy::serial : ExecPolicy::parallel;
            WitnessOptions opt;
            opt.epsilon = epsilon;
            opt.theta_points = theta_points;
            CertifySummary s = mc_kind == "cat1"
                                   ? mc_certify_cat1(mc_samples, mc_seed, policy, opt)
                                   : mc_certify_cat2(mc_samples, mc_seed, policy);
            std::cout << "kind: " << s.kind << "\n"
                      << "samples: " << s.samples << "\n"
                      << "seed: " << s.seed << "\n"
                      << "violations: " << s.violations << "\n"
                      << "min_slack: " << fmt_float(s.min_slack) << "\n"
                      << "seconds: " << fmt_float(s.seconds) << "\n";
            return 0;
        }
        if (*cmd_demo) {
            const double rt3_2 = std::sqrt(3.0) / 2.0;
            nlohmann::json j = {
                {"schema_version", 1},
                {"basis", {{"n_max_a", 3}, {"n_max_b", 3}}},
                {"state",
                 {{"kind", "pure"},
                  {"amplitudes",
                   {{{"n_a", 1}, {"n_b", 0}, {"re", rt3_2}},
                    {{"n_a", 0}, {"n_b", 1}, {"re", 0.5}}}}}}};
            StateSpec spec = parse_state_spec_text(j.dump());
            apply_overrides(spec, eps_opt, epsilon, theta_opt, theta_points,
                            steered_opt, steered);
            return emit_report(spec, format);
        }
    } catch (const spec_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return int(e.code);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 10;
    }
    return 0;
}
