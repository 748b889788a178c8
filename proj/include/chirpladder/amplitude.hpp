#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chirpladder/ladder.hpp"
#include "chirpladder/pulse.hpp"

namespace chirpladder {

enum class Method {
    exact,
    gauss_sum,
    asymptotic,
    oracle_quadrature,
    oracle_tdse,
};

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;
bool is_oracle(Method m) noexcept;

struct PathWeight {
    int m = 0;
    std::complex<double> w_exact; // -(d_m/2) erfc(zeta_m) exp(-eta_m^2)
    double w_approx = 0.0;        // -d_m Theta(-eta_m a) exp(-eta_m^2), Theta(0) = 1/2
    double phase = 0.0;           // eta_m^2 a, unreduced
};

struct AmplitudeResult {
    std::complex<double> c_e;
    double W_e = 0.0;
    std::vector<PathWeight> paths;
    Method method = Method::exact;
    std::optional<std::string> warning;
};

// Exact second-order amplitude, c_e = sum_m w_m exp(i eta_m^2 a). Valid for
// any chirp, including a = 0.
AmplitudeResult amplitude_exact(const LadderSystem& sys, const PulseParams& p);

// The same sum in canonical Gauss-sum form,
// c_e = exp(i pi N xi / 2) sum_m w_m exp[2 pi i (m + m^2/N) xi].
// Throws DegenerateManifold for zero spacing.
AmplitudeResult amplitude_gauss_sum(const LadderSystem& sys, const PulseParams& p);

// Stationary-phase amplitude from the Heaviside-truncated Gaussian weights.
// Sets a warning when |a| < kAsymptoticMinChirp.
inline constexpr double kAsymptoticMinChirp = 100.0;
AmplitudeResult amplitude_asymptotic(const LadderSystem& sys, const PulseParams& p);

// W_e = d^2/4 exp(-2 eta^2) |erfc(zeta)|^2 for a single intermediate state;
// evaluated directly from erfc, not through the weight sum.
// Throws std::invalid_argument for a manifold.
double single_state_population(const LadderSystem& sys, const PulseParams& p);

// Heaviside step with Theta(0) = 1/2.
double heaviside(double x) noexcept;

// Per-path weights shared by the exact and Gauss-sum routes.
std::vector<PathWeight> path_weights(const LadderSystem& sys, const PulseParams& p);

// sum_m w_m exp[2 pi i (m + m^2/N) xi] for weights indexed from m_lo.
std::complex<double> truncated_gauss_sum(std::span<const std::complex<double>> weights, int m_lo,
                                         double N, double xi);

struct StationaryTimes {
    double t_first = 0.0;  // t_s'' = delta_m / (2 alpha_i), the g -> m crossing
    double t_second = 0.0; // t_s' = -t_s'', the m -> e crossing
    bool time_ordered = false; // t_s'' < t_s', equivalently eta_m a < 0
    double area_phase = 0.0;   // delta_m^2 / (2 alpha_i), phase-space area of the path
};

// Throws std::domain_error for a = 0 (no stationary points).
StationaryTimes stationary_times(const LadderSystem& sys, const PulseParams& p, int m);

} // namespace chirpladder
