#pragma once

#include <complex>
#include <vector>

#include "chirpladder/pulse.hpp"

namespace chirpladder {

// Ground state, excited state at 2*omega0 and an equidistant intermediate
// manifold with offsets delta_m = delta + m*spacing, m in [m_lo, m_hi].
//
// rabi_product holds Omega_em * Omega_mg in fs^-2, either one shared value or
// one value per level ordered from m_lo to m_hi. A caption value of
// "Omega_em Omega_mg = 1" is read as 1 fs^-2.
struct LadderSystem {
    double delta = 0.0;
    double spacing = 0.0;
    int m_lo = 0;
    int m_hi = 0;
    std::vector<double> rabi_product{1.0};

    static LadderSystem single_state(double delta, double rabi = 1.0);
    static LadderSystem manifold(double delta, double spacing, int m_lo, int m_hi, double rabi = 1.0);

    int level_count() const noexcept { return m_hi - m_lo + 1; }
    bool is_single_state() const noexcept { return m_lo == m_hi; }
    double offset(int m) const noexcept { return delta + m * spacing; }
    double rabi(int m) const;

    // Throws std::invalid_argument, or DegenerateManifold for several levels
    // with zero spacing.
    void validate() const;
};

struct DerivedLevel {
    int m = 0;
    double delta_m = 0.0;
    double eta_m = 0.0;
    double d_m = 0.0;
    std::complex<double> zeta_m; // i eta_m sqrt(1 - i a)
};

struct GaussSumParams {
    double N = 0.0;     // 2 delta / spacing
    double xi = 0.0;    // delta * spacing * phi2 / pi
    double width = 0.0; // delta_omega / spacing
};

std::vector<DerivedLevel> derive_levels(const LadderSystem& sys, const PulseParams& p);

// Throws DegenerateManifold when spacing == 0.
GaussSumParams gauss_sum_params(const LadderSystem& sys, const PulseParams& p);

// Quadratic path phase eta_m^2 * a. Phases reach 10^3-10^4 rad in chirp
// sweeps, so they are formed from the raw inputs in extended precision.
long double path_phase(const LadderSystem& sys, const PulseParams& p, int m);

// The same phase in canonical Gauss-sum form,
// (pi/2) N xi + 2 pi (m + m^2/N) xi, split into the m-independent prefactor
// and the m-dependent part. Requires spacing > 0.
long double gauss_prefactor_phase(const LadderSystem& sys, const PulseParams& p);
long double gauss_index_phase(const LadderSystem& sys, const PulseParams& p, int m);

// Reduces a phase to (-pi, pi] before it is handed to double precision trig.
double reduce_phase(long double phase);

} // namespace chirpladder
