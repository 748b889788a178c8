#include "chirpladder/ladder.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "chirpladder/errors.hpp"

namespace chirpladder {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kTwoPiL = 2.0L * kPiL;

} // namespace

LadderSystem LadderSystem::single_state(double delta, double rabi) {
    return LadderSystem{delta, 0.0, 0, 0, {rabi}};
}

LadderSystem LadderSystem::manifold(double delta, double spacing, int m_lo, int m_hi, double rabi) {
    return LadderSystem{delta, spacing, m_lo, m_hi, {rabi}};
}

double LadderSystem::rabi(int m) const {
    if (m < m_lo || m > m_hi)
        throw std::out_of_range("ladder: level index " + std::to_string(m) + " outside manifold");
    if (rabi_product.size() == 1)
        return rabi_product.front();
    return rabi_product.at(static_cast<std::size_t>(m - m_lo));
}

void LadderSystem::validate() const {
    if (m_lo > 0 || m_hi < 0)
        throw std::invalid_argument("ladder: index window must satisfy m_lo <= 0 <= m_hi");
    if (!std::isfinite(delta))
        throw std::invalid_argument("ladder: delta must be finite");
    if (!(spacing >= 0.0) || !std::isfinite(spacing))
        throw std::invalid_argument("ladder: spacing must be finite and >= 0");
    if (spacing == 0.0 && m_lo != m_hi)
        throw DegenerateManifold("ladder: several levels with zero spacing");
    if (rabi_product.size() != 1 && rabi_product.size() != static_cast<std::size_t>(level_count()))
        throw std::invalid_argument("ladder: rabi_product needs 1 or " + std::to_string(level_count()) +
                                    " values, got " + std::to_string(rabi_product.size()));
    for (double r : rabi_product)
        if (!std::isfinite(r))
            throw std::invalid_argument("ladder: rabi_product values must be finite");
}

std::vector<DerivedLevel> derive_levels(const LadderSystem& sys, const PulseParams& p) {
    sys.validate();
    p.validate();
    const ChirpDerived c = derive_chirp(p);
    const std::complex<double> root = std::sqrt(std::complex<double>(1.0, -c.a));
    const double bw2 = p.delta_omega * p.delta_omega;

    std::vector<DerivedLevel> levels;
    levels.reserve(static_cast<std::size_t>(sys.level_count()));
    for (int m = sys.m_lo; m <= sys.m_hi; ++m) {
        DerivedLevel lv;
        lv.m = m;
        lv.delta_m = sys.offset(m);
        lv.eta_m = lv.delta_m / p.delta_omega;
        lv.d_m = std::numbers::pi * sys.rabi(m) / bw2;
        lv.zeta_m = std::complex<double>(0.0, lv.eta_m) * root;
        levels.push_back(lv);
    }
    return levels;
}

GaussSumParams gauss_sum_params(const LadderSystem& sys, const PulseParams& p) {
    sys.validate();
    p.validate();
    if (sys.spacing == 0.0)
        throw DegenerateManifold("ladder: Gauss-sum parameters need a nonzero spacing");
    GaussSumParams g;
    g.N = 2.0 * sys.delta / sys.spacing;
    g.xi = sys.delta * sys.spacing * p.phi2 / std::numbers::pi;
    g.width = p.delta_omega / sys.spacing;
    return g;
}

long double path_phase(const LadderSystem& sys, const PulseParams& p, int m) {
    const long double delta_m = static_cast<long double>(sys.delta) + static_cast<long double>(m) * sys.spacing;
    const long double bw = p.delta_omega;
    const long double eta = delta_m / bw;
    const long double a = bw * bw * p.phi2;
    return eta * eta * a;
}

namespace {

struct GaussSumL {
    long double N;
    long double xi;
};

GaussSumL gauss_params_l(const LadderSystem& sys, const PulseParams& p) {
    if (sys.spacing == 0.0)
        throw DegenerateManifold("ladder: Gauss-sum phase needs a nonzero spacing");
    const long double delta = sys.delta;
    const long double spacing = sys.spacing;
    return {2.0L * delta / spacing, delta * spacing * p.phi2 / kPiL};
}

} // namespace

long double gauss_prefactor_phase(const LadderSystem& sys, const PulseParams& p) {
    const GaussSumL g = gauss_params_l(sys, p);
    return 0.5L * kPiL * g.N * g.xi;
}

long double gauss_index_phase(const LadderSystem& sys, const PulseParams& p, int m) {
    const GaussSumL g = gauss_params_l(sys, p);
    const long double ml = m;
    return kTwoPiL * (ml + ml * ml / g.N) * g.xi;
}

double reduce_phase(long double phase) {
    long double r = std::fmod(phase, kTwoPiL);
    if (r > kPiL)
        r -= kTwoPiL;
    else if (r <= -kPiL)
        r += kTwoPiL;
    return static_cast<double>(r);
}

} // namespace chirpladder
