#include "chirpladder/cerf.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chirpladder::cerf {

namespace {

using cplx = std::complex<double>;

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;
constexpr double kTwoInvSqrtPi = 2.0 * std::numbers::inv_sqrtpi;

// Series region (right half-plane): Re z <= 2 and |z| <= 6. The relative
// rounding error of 1 - erf(z) there grows like eps * exp(2 Re(z)^2) |z|,
// i.e. stays below ~1e-12. Outside it the continued fraction needs < 70 terms.
constexpr double kSeriesMaxReal = 2.0;
constexpr double kSeriesMaxModulus = 6.0;

void require_finite(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("erfc: argument must be finite");
}

// erf(z) = 2/sqrt(pi) sum_n (-1)^n z^(2n+1) / (n! (2n+1))
cplx erf_series(cplx z) {
    const cplx z2 = z * z;
    cplx term = z;
    cplx sum = z;
    for (int n = 1; n < 400; ++n) {
        term *= -z2 / static_cast<double>(n);
        const cplx add = term / static_cast<double>(2 * n + 1);
        sum += add;
        if (std::abs(add) <= 1e-17 * std::abs(sum))
            break;
    }
    return kTwoInvSqrtPi * sum;
}

// erfcx(z) = 1/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))),
// modified Lentz evaluation. Converges for Re z > 0.
cplx erfcx_continued_fraction(cplx z) {
    constexpr double tiny = 1e-300;
    cplx f = z;
    if (f == 0.0)
        f = tiny;
    cplx c = f;
    cplx d = 0.0;
    for (int k = 1; k < 2000; ++k) {
        const double ak = 0.5 * k;
        d = z + ak * d;
        if (d == 0.0)
            d = tiny;
        c = z + ak / c;
        if (c == 0.0)
            c = tiny;
        d = 1.0 / d;
        const cplx delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 2e-16)
            break;
    }
    return kInvSqrtPi / f;
}

bool in_series_region(cplx z) {
    return z.real() <= kSeriesMaxReal && std::abs(z) <= kSeriesMaxModulus;
}

// Right half-plane (Re z >= 0) evaluation.
CerfResult erfc_right(cplx z) {
    CerfResult r;
    if (in_series_region(z)) {
        r.branch = Branch::series;
        r.value = 1.0 - erf_series(z);
        r.scaled = std::exp(z * z) * r.value;
    } else {
        r.branch = Branch::continued_fraction;
        r.scaled = erfcx_continued_fraction(z);
        r.value = std::exp(-z * z) * r.scaled;
    }
    return r;
}

cplx check_asymptotic_argument(cplx z) {
    require_finite(z);
    if (std::abs(z) < kAsymptoticMinModulus)
        throw std::domain_error("erfc asymptotic: |z| below threshold, leading order is not accurate");
    return std::exp(-z * z) * kInvSqrtPi / z;
}

} // namespace

std::string_view to_string(Branch b) noexcept {
    switch (b) {
    case Branch::series: return "series";
    case Branch::continued_fraction: return "continued-fraction";
    case Branch::reflection: return "reflection";
    }
    return "unknown";
}

CerfResult erfc(cplx z) {
    require_finite(z);
    if (z.real() >= 0.0)
        return erfc_right(z);

    const CerfResult mirror = erfc_right(-z);
    CerfResult r;
    r.branch = Branch::reflection;
    r.value = 2.0 - mirror.value;
    r.scaled = 2.0 * std::exp(z * z) - mirror.scaled;
    return r;
}

cplx erfcx(cplx z) {
    return erfc(z).scaled;
}

cplx erfc_asymptotic_pos(cplx z) {
    const cplx tail = check_asymptotic_argument(z);
    if (!(z.real() > 0.0))
        throw std::domain_error("erfc_asymptotic_pos: needs Re z > 0");
    return tail;
}

cplx erfc_asymptotic_neg(cplx z) {
    const cplx tail = check_asymptotic_argument(z);
    if (!(z.real() < 0.0))
        throw std::domain_error("erfc_asymptotic_neg: needs Re z < 0");
    return 2.0 + tail;
}

} // namespace chirpladder::cerf
