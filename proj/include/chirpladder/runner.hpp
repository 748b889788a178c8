#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "chirpladder/amplitude.hpp"
#include "chirpladder/config.hpp"

namespace chirpladder::cli {

// Relative output paths are placed under this directory when it is set.
inline constexpr const char* kOutputDirEnv = "CHIRPLADDER_OUTPUT_DIR";

std::string resolve_output_path(const std::string& path);

// One amplitude evaluation with the oracle settings of the config applied.
AmplitudeResult evaluate(Method method, const LadderSystem& ladder, const PulseParams& pulse,
                         const OracleSettings& settings);

struct SweepRow {
    double variable = 0.0;
    double a = 0.0;
    std::optional<double> xi;
    std::complex<double> c_e;
    double W_e = 0.0;
    Method method = Method::exact;
};

struct SweepTable {
    Axis axis = Axis::phi2;
    std::vector<SweepRow> rows; // by point, then in configured method order
    std::vector<std::string> warnings;
};

// Points are evaluated on worker threads; the table is assembled in index
// order, so the output does not depend on scheduling.
SweepTable run_sweep(const RunConfig& cfg);

struct WeightRow {
    int m = 0;
    double w_exact_abs = 0.0; // |w_m / d_m|
    double w_approx_abs = 0.0;
    double phase = 0.0;       // eta_m^2 a
};

// Weights at the chirp of the pulse section. Needs a manifold.
std::vector<WeightRow> run_weights(const RunConfig& cfg);

double default_tolerance(Method m);

struct ComparisonEntry {
    double variable = 0.0;
    Method method = Method::exact;
    double relative = 0.0; // |c_X - c_ref| / |c_ref|
    double tolerance = 0.0;
};

struct MethodSummary {
    Method method = Method::exact;
    double max = 0.0;
    double median = 0.0;
    double tolerance = 0.0;
    std::size_t breaches = 0;
};

struct ComparisonReport {
    Axis axis = Axis::phi2;
    Method reference = Method::exact;
    std::vector<ComparisonEntry> entries;
    std::vector<MethodSummary> summary;
    std::vector<std::string> warnings;

    bool breached() const;
};

// Compares every configured method against the exact amplitude, or the
// first analytic method when exact is not listed. tolerance overrides both
// the config value and the per-method defaults.
ComparisonReport oracle_compare(const RunConfig& cfg, std::optional<double> tolerance = std::nullopt);

void write_sweep(std::ostream& out, const SweepTable& table, const RunConfig& cfg);
void write_weights(std::ostream& out, const std::vector<WeightRow>& rows, const RunConfig& cfg);
void write_comparison(std::ostream& out, const ComparisonReport& report, const RunConfig& cfg);

// Human-readable max/median lines for the terminal.
std::string summary_text(const ComparisonReport& report);

} // namespace chirpladder::cli
