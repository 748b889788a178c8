#include "chirpladder/pulse.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chirpladder {

PulseParams PulseParams::from_chirp(double omega0, double delta_omega, double a) {
    if (!(delta_omega > 0.0))
        throw std::invalid_argument("pulse: delta_omega must be > 0");
    return PulseParams{omega0, delta_omega, a / (delta_omega * delta_omega)};
}

void PulseParams::validate() const {
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
        throw std::invalid_argument("pulse: omega0 must be finite and > 0");
    if (!(delta_omega > 0.0) || !std::isfinite(delta_omega))
        throw std::invalid_argument("pulse: delta_omega must be finite and > 0");
    if (!std::isfinite(phi2) || !std::isfinite(chirp()))
        throw std::invalid_argument("pulse: chirp a = delta_omega^2 * phi2 is not finite");
}

ChirpDerived derive_chirp(const PulseParams& p) {
    ChirpDerived c;
    c.a = p.chirp();
    // (1 + ia)/(1 + a^2) == 1/(1 - ia); the reciprocal form avoids squaring a.
    // 1 - ia has positive real part, so the principal root never meets the cut.
    c.f0 = 1.0 / std::sqrt(std::complex<double>(1.0, -c.a));
    const double half_bw2 = 0.5 * p.delta_omega * p.delta_omega;
    const double denom = 1.0 + c.a * c.a;
    c.alpha_r = half_bw2 / denom;
    c.alpha_i = half_bw2 * c.a / denom;
    return c;
}

std::complex<double> envelope(const ChirpDerived& c, double t) {
    const double t2 = t * t;
    return c.f0 * std::exp(-c.alpha_r * t2) * std::polar(1.0, -c.alpha_i * t2);
}

std::complex<double> envelope(const PulseParams& p, double t) {
    return envelope(derive_chirp(p), t);
}

double instantaneous_frequency(const PulseParams& p, double t) {
    return p.omega0 + 2.0 * derive_chirp(p).alpha_i * t;
}

} // namespace chirpladder
