#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epdyn/model.hpp"
#include "epdyn/types.hpp"

namespace epdyn::cli {

enum class Basis { rotated, original };
enum class OutputFormat { csv, json };

struct RunConfig {
    ModelParams params{};
    bool has_params = false;
    std::optional<Complex> lambda;
    std::optional<std::pair<double, double>> lambda_range;
    StateVector psi0{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    Basis basis = Basis::rotated;
    int grid = 0;
    OutputFormat format = OutputFormat::csv;
    std::string output_path;
};

/// Parse the key-value model file.  Keys: omega1, omega2, epsilon1, epsilon2,
/// delta (two-element real arrays, [re, im]) and the optional `preset` name;
/// `preset = paper` loads the built-in parameter set, explicit keys override
/// it.  Unknown keys are rejected; all violations are reported together.
RunConfig parse_config(const std::string& text);

// Built-in parameter presets (currently just "paper")
ModelParams preset_params(const std::string& name);

/// Entry point behind the epdyn binary.  argv names one subcommand out of
/// spectrum | eps | evolve | sweep | critical | jordan.  Returns 0 on
/// success, 2 on usage/config errors, 1 on computation errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// sweep-table round-trip support
struct SweepRow {
    double lambda, re_e1, im_e1, re_e2, im_e2;
};

std::vector<SweepRow> read_sweep_csv(std::istream& in);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace epdyn::cli
