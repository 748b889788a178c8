#pragma once

#include <complex>

namespace chirpladder {

// Linearly chirped Gaussian pulse. Units: time fs, angular frequency fs^-1,
// second-order dispersion fs^2. The field amplitude is not stored; it lives in
// the Rabi products of the ladder.
struct PulseParams {
    double omega0 = 0.0;      // carrier angular frequency
    double delta_omega = 0.0; // bandwidth
    double phi2 = 0.0;        // second-order dispersion

    // Builds the pulse from the dimensionless chirp a = delta_omega^2 * phi2.
    static PulseParams from_chirp(double omega0, double delta_omega, double a);

    double chirp() const noexcept { return delta_omega * delta_omega * phi2; }

    // Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

struct ChirpDerived {
    double a = 0.0;
    std::complex<double> f0{1.0, 0.0};
    double alpha_r = 0.0; // real Gaussian rate, always > 0
    double alpha_i = 0.0; // chirp rate, sign(alpha_i) == sign(a)
};

ChirpDerived derive_chirp(const PulseParams& p);

// f(t) = f0 exp(-alpha_r t^2) exp(-i alpha_i t^2)
std::complex<double> envelope(const ChirpDerived& c, double t);
std::complex<double> envelope(const PulseParams& p, double t);

// omega(t) = omega0 + 2 alpha_i t
double instantaneous_frequency(const PulseParams& p, double t);

} // namespace chirpladder
