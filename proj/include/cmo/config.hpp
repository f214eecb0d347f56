#pragma once

#include "cmo/sweep.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmo::cli {

/// Config-file parse/validation failure, with file/line/field diagnostics
/// already formatted into what().
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// RunConfig stores values in the units of the file format: linear frequencies
// in Hz (multiplied by 2*pi on conversion to the model), temperature in K.

struct EffectiveBlock {
    double omega_b = 0.0;
    double kappa_a = 0.0;
    double gamma_b = 0.0;
    double delta_a_tilde = 0.0;
    double delta_1 = 0.0;
    double delta_2 = 0.0;
    double G = 0.0;
    double g_1 = 0.0;
    double g_2 = 0.0;
    double kappa_1 = 0.0;
    double kappa_2 = 0.0;
    double omega_0 = 0.0;
    double temperature = 0.0;
    // Pinned occupations (all four or none).
    std::optional<double> n_bar_a, n_bar_1, n_bar_2, n_bar_b;
};

struct PhysicalBlock {
    double omega_a = 0.0;
    double omega_b = 0.0;
    double omega_1 = 0.0;
    double omega_2 = 0.0;
    double omega_0 = 0.0;
    double kappa_a = 0.0;
    double kappa_1 = 0.0;
    double kappa_2 = 0.0;
    double gamma_b = 0.0;
    double g_0 = 0.0;
    double g_1 = 0.0;
    double g_2 = 0.0;
    double drive_amplitude = 0.0;
    double temperature = 0.0;
};

struct AxisSpec {
    sweep::AxisParam param = sweep::AxisParam::DeltaATilde;
    double start = 0.0;  ///< Hz (or K, or dimensionless when normalized)
    double stop = 0.0;
    int count = 2;
    sweep::NormRef norm = sweep::NormRef::None;
};

enum class OutputFormat { Csv, Json };

struct OutputSpec {
    std::string path;
    OutputFormat format = OutputFormat::Csv;
    bool emit_plot_script = false;
};

struct RunConfig {
    enum class Mode { Effective, Physical } mode = Mode::Effective;
    std::optional<EffectiveBlock> effective;
    std::optional<PhysicalBlock> physical;
    double gamma_b_sign = -1.0;
    std::vector<AxisSpec> axes;  // 0, 1 or 2 entries
    OutputSpec output;
};

/// Parse a config from text. JSON is detected by a leading '{'; anything else
/// is read as the flat key-value format. Throws ConfigError.
RunConfig parse_config(const std::string& text, const std::string& source_name);

RunConfig parse_config_file(const std::string& path);

/// Canonical flat-format rendering; parse_config(dump_config(c)) yields an
/// identical effective parameter set.
std::string dump_config(const RunConfig& c);

/// Sweep-ready base (rad/s units, occupations resolved). For physical-mode
/// configs this runs the steady-state reduction first.
sweep::Base to_base(const RunConfig& c);

/// Axis in model units (Hz converted to rad/s when not normalized).
sweep::Axis to_axis(const RunConfig& c, const AxisSpec& spec);

const char* output_format_name(OutputFormat f);

}  // namespace cmo::cli
