#ifndef STEERKIT_SPECFILE_HPP
#define STEERKIT_SPECFILE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "steerkit/witness.hpp"

namespace steerkit {

// Machine-readable failure codes; the CLI maps them to exit codes >= 10.
enum class SpecErrorCode { io = 10, syntax = 11, schema = 12, precondition = 13 };

struct spec_error : std::runtime_error {
    SpecErrorCode code;
    spec_error(SpecErrorCode c, const std::string& what)
        : std::runtime_error(what), code(c) {}
};

// Parsed and validated state specification; the state is built eagerly so
// constructor preconditions surface at parse time.
struct StateSpec {
    int schema_version = 1;
    std::string kind;  // pure | mixture | separable | werner | tmsv
    DensityOperator state;
    std::optional<WernerSpec> werner;  // set for kind == werner
    WitnessOptions options;
    std::optional<Steered> steered;  // restrict report to one side if set
    nlohmann::json raw;              // normalized echo of the input

    const nlohmann::json& canonical() const { return raw; }

    explicit StateSpec(DensityOperator s) : state(std::move(s)) {}
};

StateSpec parse_state_spec(const std::string& path);
StateSpec parse_state_spec_text(const std::string& text);

enum class ReportFormat { tree, csv };

struct ReportResult {
    std::string body;
    int exit_code;  // 0 ran (no witness applicable), 2 steerable, 3 entangled, 4 inconclusive
};

ReportResult run_report(const StateSpec& spec, ReportFormat format = ReportFormat::tree);

// 17-significant-digit float rendering used by every report writer.
std::string fmt_float(double v);

struct SweepRow {
    double x;
    std::string label;
    double value;
};

// eta vs Werner category for one d; boundary rows labelled "boundary".
std::vector<SweepRow> sweep_werner(int d, const std::vector<double>& grid);

// Generalized HZ value (steered B) for psi = cos(a)|1,0> + sin(a)|0,1>.
std::vector<SweepRow> sweep_genhz(const std::vector<double>& grid);

std::string sweep_csv(const std::string& x_name, const std::string& value_name,
                      const std::vector<SweepRow>& rows);

}  // namespace steerkit

#endif
