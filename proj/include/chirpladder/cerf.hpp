#pragma once

#include <complex>
#include <string_view>

namespace chirpladder::cerf {

enum class Branch {
    series,             // Taylor series of erf about the origin
    continued_fraction, // Laplace continued fraction for erfcx
    reflection,         // left half-plane, mapped through erfc(-z) = 2 - erfc(z)
};

std::string_view to_string(Branch b) noexcept;

struct CerfResult {
    std::complex<double> value;  // erfc(z); may overflow to inf where exp(-z^2) does
    std::complex<double> scaled; // erfcx(z) = exp(z^2) erfc(z)
    Branch branch = Branch::series;
};

// Complementary error function of complex argument. Relative accuracy is
// better than 1e-12 in the right half-plane; in the left half-plane the
// reflection adds the cancellation error of 2 - erfc(-z) near zeros of erfc.
// Throws std::domain_error on non-finite input.
CerfResult erfc(std::complex<double> z);

// Scaled function only; the primitive used by the amplitude code.
std::complex<double> erfcx(std::complex<double> z);

// Leading-order asymptotic forms of erfc along the chirp trajectory.
// Relative error is O(|z|^-2); both refuse (std::domain_error) for
// |z| < kAsymptoticMinModulus.
inline constexpr double kAsymptoticMinModulus = 3.0;

// exp(-z^2) / (sqrt(pi) z), for Re z > 0 (decaying regime).
std::complex<double> erfc_asymptotic_pos(std::complex<double> z);

// 2 + exp(-z^2) / (sqrt(pi) z), for Re z < 0 (oscillatory regime).
std::complex<double> erfc_asymptotic_neg(std::complex<double> z);

} // namespace chirpladder::cerf
