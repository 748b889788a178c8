#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chirpladder/amplitude.hpp"
#include "chirpladder/ladder.hpp"
#include "chirpladder/oracle.hpp"
#include "chirpladder/pulse.hpp"

// Run configuration for the command-line front end.
//
// The text format is YAML restricted to one level of sections holding
// key: value pairs:
//
//   preset: fig1-top          # optional, expanded first
//   pulse:   {omega0, delta_omega, phi2 | a}
//   ladder:  {delta, spacing, m_lo, m_hi, rabi_product (scalar or list)}
//   sweep:   {variable, start, stop, n, scale, linear_width, methods}
//   output:  {path, format}
//   oracle:  {epsilon, tolerance, quad_points, quad_t_max, quad_scheme,
//             tdse_dt, tdse_t_span}
//
// Values are applied in order preset, file, overrides; later wins.
namespace chirpladder::cli {

enum class Axis { phi2, a, xi };
enum class Scale { linear, log_symmetric };
enum class Format { csv, json };

std::string_view to_string(Axis a) noexcept;
std::string_view to_string(Scale s) noexcept;
std::string_view to_string(Format f) noexcept;

struct SweepSpec {
    Axis variable = Axis::phi2;
    double start = 0.0;
    double stop = 0.0;
    int n = 2;
    Scale scale = Scale::linear;
    // log-symmetric grids are uniform in asinh(v / linear_width)
    double linear_width = 1.0;
    std::vector<Method> methods{Method::exact};

    // n points from start to stop inclusive; endpoints are exact.
    std::vector<double> points() const;
};

struct PulseInput {
    double omega0 = 0.0;
    double delta_omega = 0.0;
    std::optional<double> phi2;
    std::optional<double> a;

    // Exactly one of phi2 and a must be set.
    PulseParams resolve() const;
};

struct OutputSpec {
    std::string path; // empty: standard output
    Format format = Format::csv;
};

struct OracleSettings {
    double epsilon = 1e-3;
    std::optional<double> tolerance;
    std::optional<std::size_t> quad_points;
    std::optional<double> quad_t_max;
    std::optional<oracle::Scheme> quad_scheme;
    std::optional<double> tdse_dt;
    std::optional<double> tdse_t_span;
};

struct RunConfig {
    std::optional<std::string> preset;
    PulseInput pulse;
    LadderSystem ladder;
    std::optional<SweepSpec> sweep;
    OutputSpec output;
    OracleSettings oracle;

    // "section.key" -> 1-based source line, for diagnostics.
    std::map<std::string, int> lines;

    int line_of(const std::string& field) const;
};

struct PresetInfo {
    std::string_view name;
    std::string_view summary;
};

const std::vector<PresetInfo>& presets();

// Throws ConfigError for an unknown name.
RunConfig expand_preset(std::string_view name);

// Parses text on top of base. A preset key in the text replaces base with
// the expanded preset.
RunConfig parse_config(std::string_view text, const RunConfig& base = RunConfig{});
RunConfig load_config(const std::string& path, const RunConfig& base = RunConfig{});

// Applies "section.key=value"; the value is read as YAML, so lists are
// written as [1, 2, 3]. Returns the previous value as text.
std::string apply_override(RunConfig& cfg, std::string_view assignment);

// Checks the pulse, ladder and output sections. Throws ConfigError.
void validate(const RunConfig& cfg);

// Additionally checks the sweep section and the method/ladder combination.
void validate_sweep(const RunConfig& cfg);

// Normalized text: every set key, fixed order, 17 significant digits.
std::string serialize(const RunConfig& cfg);

// The same content as a JSON object text.
std::string to_json_text(const RunConfig& cfg);

// Value of a sweep coordinate expressed on all three axes.
struct AxisPoint {
    double phi2 = 0.0;
    double a = 0.0;
    std::optional<double> xi; // defined when the ladder spacing is > 0
};

// a = delta_omega^2 phi2, xi = delta * spacing * phi2 / pi.
AxisPoint convert_axis(Axis axis, double value, double delta_omega, const LadderSystem& ladder);

// %.17g
std::string format_number(double v);

} // namespace chirpladder::cli
