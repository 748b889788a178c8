#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "chirpladder/amplitude.hpp"
#include "chirpladder/ladder.hpp"
#include "chirpladder/pulse.hpp"

// Brute-force validators for the closed-form amplitude: direct quadrature of
// the time-ordered double integral, and time-stepping of the Schroedinger
// equation of the full ladder.
namespace chirpladder::oracle {

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

enum class Scheme {
    // Time-ordered integral over (t', t'') evaluated as an outer integral of
    // the running inner integral; cost linear in n_points.
    nested,
    // Tensor grid over the (t_bar, t) rectangle; cost quadratic in n_points,
    // usable for small |a| only.
    tensor,
};

std::string_view to_string(Scheme s) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

// Composite 16-point Gauss-Legendre panels. n_points counts nodes along the
// t' axis on [-t_max, t_max]; the node spacing is h = 2 t_max / n_points.
struct QuadratureSpec {
    double t_max = 0.0;
    std::size_t n_points = 0;
    Scheme scheme = Scheme::nested;

    double step() const noexcept { return 2.0 * t_max / static_cast<double>(n_points); }
};

inline constexpr std::size_t kPanelOrder = 16;
inline constexpr double kEnvelopeSpan = 8.0;   // t_max >= 8 / sqrt(alpha_r)
inline constexpr double kPhasePerNode = 0.1;   // phase advance allowed per node

// Smallest spec satisfying the resolution bounds for every level.
QuadratureSpec default_quadrature_spec(std::span<const DerivedLevel> levels, const PulseParams& p);

// Throws std::invalid_argument when the window is too short or the grid
// under-resolves the chirp, the offsets or the envelope.
void validate(const QuadratureSpec& spec, std::span<const DerivedLevel> levels, const PulseParams& p);

// Every quad_* function runs validate on its QuadratureSpec first.

// I_1 = f0 int dt_bar exp(-(delta_omega f0)^2 t_bar^2 / 4); equals 2 sqrt(pi)/delta_omega.
std::complex<double> quad_I1(const PulseParams& p, const QuadratureSpec& spec);

// I_2 = f0 int_0^inf dt exp(-i delta_m t) exp(-(delta_omega f0)^2 t^2 / 4).
std::complex<double> quad_I2(const DerivedLevel& level, const PulseParams& p, const QuadratureSpec& spec);

// Time-ordered double integral
// I_m = int dt' int_{-inf}^{t'} dt'' exp(-i delta_m (t' - t'')) f(t') f(t'').
std::complex<double> quad_Im(const DerivedLevel& level, const PulseParams& p, const QuadratureSpec& spec);

// The same integrand over the whole (t', t'') plane, without time ordering.
std::complex<double> quad_full_plane(const DerivedLevel& level, const PulseParams& p,
                                     const QuadratureSpec& spec);

// c_e = -(1/2) sum_m Omega_em Omega_mg I_m from quad_Im. Uses the default
// spec when none is given.
AmplitudeResult amplitude_quadrature(const LadderSystem& sys, const PulseParams& p,
                                     std::optional<QuadratureSpec> spec = std::nullopt);

// ---------------------------------------------------------------------------
// Schroedinger equation
// ---------------------------------------------------------------------------

// Each Rabi frequency is multiplied by epsilon, so the two-photon amplitude
// scales as epsilon^2. Rabi products are split symmetrically:
// Omega_mg = sqrt|r|, Omega_em = sign(r) sqrt|r|.
struct TdseSpec {
    double epsilon = 1e-3;
    double t_span = 0.0; // integration runs over [-t_span/2, t_span/2]
    double dt = 0.0;
};

inline constexpr double kTdsePhasePerStep = 0.05;
inline constexpr double kNormDriftLimit = 1e-8;
inline constexpr double kPerturbativePopulation = 1e-3;

// Exact time-ordered second order of the Schroedinger equation gives twice
// the closed-form amplitude, whose double integral carries an extra 1/2.
inline constexpr double kTdseToClosedForm = 0.5;

TdseSpec default_tdse_spec(const LadderSystem& sys, const PulseParams& p, double epsilon);

// Throws std::invalid_argument on step-size violations.
void validate(const TdseSpec& spec, const LadderSystem& sys, const PulseParams& p);

struct TdseResult {
    std::complex<double> c_e;       // raw excited-state amplitude at t_span/2
    std::complex<double> c_g;       // ground-state amplitude at t_span/2
    double norm_drift = 0.0;        // max |sum |c_k|^2 - 1| over the run
    double max_intermediate_population = 0.0;
    std::size_t steps = 0;

    bool perturbative() const noexcept { return max_intermediate_population <= kPerturbativePopulation; }
};

// Classical fourth-order Runge-Kutta in the interaction picture, starting in
// the ground state. Throws NumericalFailure when the norm drifts by more
// than kNormDriftLimit.
TdseResult tdse_amplitude(const LadderSystem& sys, const PulseParams& p, const TdseSpec& spec);

// tdse_amplitude rescaled to the closed-form normalization,
// c_e * kTdseToClosedForm / epsilon^2. Requires epsilon > 0.
AmplitudeResult amplitude_tdse(const LadderSystem& sys, const PulseParams& p,
                               std::optional<TdseSpec> spec = std::nullopt);

} // namespace chirpladder::oracle
