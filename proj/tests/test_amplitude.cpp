#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "chirpladder/amplitude.hpp"
#include "chirpladder/cerf.hpp"
#include "chirpladder/errors.hpp"
#include "oracles/mp_erfc.hpp"
#include "oracles/mp_gauss_sum.hpp"

using namespace chirpladder;
using cplx = std::complex<double>;

namespace {

constexpr double kOmega0 = 2.4;
constexpr double kBandwidth = 0.1525;

PulseParams chirped(double a) {
    return PulseParams::from_chirp(kOmega0, kBandwidth, a);
}

LadderSystem single() {
    return LadderSystem::single_state(0.0225);
}

LadderSystem manifold15() {
    return LadderSystem::manifold(0.0225, 0.003, -7, 7);
}

double rel(cplx x, cplx ref) {
    return std::abs(x - ref) / std::abs(ref);
}

int interior_maxima(const std::vector<double>& v) {
    int n = 0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] > v[i - 1] && v[i] > v[i + 1])
            ++n;
    return n;
}

} // namespace

TEST(Amplitude, ResonantIntermediateState) {
    const LadderSystem sys = LadderSystem::single_state(0.0);
    const double d = std::numbers::pi / (kBandwidth * kBandwidth);
    for (double a : {-1e5, -300.0, 0.0, 1.0, 5e4}) {
        const AmplitudeResult r = amplitude_exact(sys, chirped(a));
        EXPECT_NEAR(r.c_e.real(), -d / 2, 1e-12 * d);
        EXPECT_NEAR(r.c_e.imag(), 0.0, 1e-12 * d);
        EXPECT_NEAR(single_state_population(sys, chirped(a)), d * d / 4, 1e-10 * d * d);
    }
}

TEST(Amplitude, WeightsMatchDirectFormula) {
    for (double a : {-1e5, -1e4, -10824.0, -50.0, 0.0, 3.0, 1e4, 1e5}) {
        const PulseParams p = chirped(a);
        const auto levels = derive_levels(manifold15(), p);
        const auto weights = path_weights(manifold15(), p);
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const DerivedLevel& lv = levels[k];
            const cplx direct = -0.5 * lv.d_m * cerf::erfc(lv.zeta_m).value * std::exp(-lv.eta_m * lv.eta_m);
            EXPECT_LT(rel(weights[k].w_exact, direct), 1e-11) << "a=" << a << " m=" << lv.m;
        }
    }
}

TEST(Amplitude, WeightsMatchExtendedPrecision) {
    for (double a : {-200.0, -20.0, -1.0, 0.5, 40.0, 250.0}) {
        const PulseParams p = chirped(a);
        const auto levels = derive_levels(manifold15(), p);
        const auto weights = path_weights(manifold15(), p);
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const DerivedLevel& lv = levels[k];
            const cplx ref = -0.5 * lv.d_m * oracles::erfc_ref(lv.zeta_m) * std::exp(-lv.eta_m * lv.eta_m);
            EXPECT_LT(rel(weights[k].w_exact, ref), 1e-11) << "a=" << a << " m=" << lv.m;
        }
    }
}

TEST(Amplitude, SingleStatePopulationMatchesSum) {
    for (double a = -3000.0; a <= 3000.0; a += 97.0) {
        const double w = single_state_population(single(), chirped(a));
        EXPECT_NEAR(w, amplitude_exact(single(), chirped(a)).W_e, 1e-12 * w) << a;
    }
    EXPECT_THROW(single_state_population(manifold15(), chirped(1.0)), std::invalid_argument);
}

TEST(Amplitude, SingleStateRegimes) {
    std::vector<double> negative;
    for (double a = -3000.0; a <= 0.0; a += 1.0)
        negative.push_back(amplitude_exact(single(), chirped(a)).W_e);
    EXPECT_GE(interior_maxima(negative), 3);

    double previous = amplitude_exact(single(), chirped(0.0)).W_e;
    for (double a = 1.0; a <= 3000.0; a += 1.0) {
        const double w = amplitude_exact(single(), chirped(a)).W_e;
        EXPECT_LE(w, previous) << a;
        previous = w;
    }
}

TEST(Amplitude, OscillationPlateau) {
    // For large negative chirp |erfc| ~ |2 + tail|, so W_e oscillates about
    // d^2 exp(-2 eta^2).
    const DerivedLevel lv = derive_levels(single(), chirped(-1.0)).front();
    const double plateau = lv.d_m * lv.d_m * std::exp(-2 * lv.eta_m * lv.eta_m);
    double lo = 1e300, hi = 0.0;
    std::vector<double> w;
    for (double a = -3e4; a <= -1e4; a += 5.0) {
        w.push_back(single_state_population(single(), chirped(a)) / plateau);
        lo = std::min(lo, w.back());
        hi = std::max(hi, w.back());
    }
    EXPECT_GE(interior_maxima(w), 3);
    EXPECT_LT(lo, 1.0);
    EXPECT_GT(hi, 1.0);
    EXPECT_NEAR(0.5 * (lo + hi), 1.0, 0.01);
}

TEST(Amplitude, MirrorSymmetry) {
    for (double a : {-2000.0, -30.0, 0.7, 150.0}) {
        for (double delta : {0.0225, 0.004, 0.1}) {
            const double w1 = single_state_population(LadderSystem::single_state(delta), chirped(a));
            const double w2 = single_state_population(LadderSystem::single_state(-delta), chirped(-a));
            EXPECT_NEAR(w1, w2, 1e-12 * w1);
        }
    }
}

TEST(Amplitude, RabiScaleLinearity) {
    const PulseParams p = chirped(-777.0);
    const AmplitudeResult base = amplitude_exact(manifold15(), p);
    LadderSystem doubled = manifold15();
    doubled.rabi_product = {2.0};
    const AmplitudeResult twice = amplitude_exact(doubled, p);
    EXPECT_EQ(twice.c_e, 2.0 * base.c_e);
    EXPECT_EQ(twice.W_e, 4.0 * base.W_e);

    LadderSystem scaled = manifold15();
    scaled.rabi_product = {3.7};
    const AmplitudeResult r = amplitude_exact(scaled, p);
    EXPECT_LT(rel(r.c_e, 3.7 * base.c_e), 1e-15);
    EXPECT_NEAR(r.W_e, 3.7 * 3.7 * base.W_e, 1e-14 * r.W_e);
}

TEST(Amplitude, ExactIsSumOfWeightedPhases) {
    const LadderSystem sys = manifold15();
    const PulseParams p = chirped(-2500.0);
    const AmplitudeResult r = amplitude_exact(sys, p);
    cplx sum = 0.0;
    for (const PathWeight& w : r.paths)
        sum += w.w_exact * std::polar(1.0, oracles::reduce_mp(oracles::path_phase_mp(0.0225, 0.003, w.m, p.phi2)));
    EXPECT_LT(rel(r.c_e, sum), 1e-13);
    EXPECT_GE(r.W_e, 0.0);
    EXPECT_EQ(r.method, Method::exact);
}

TEST(GaussSum, AgreesWithExact) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> phi2(-5e5, 5e5);
    for (int i = 0; i < 50; ++i) {
        const PulseParams p{kOmega0, kBandwidth, phi2(rng)};
        const AmplitudeResult e = amplitude_exact(manifold15(), p);
        const AmplitudeResult g = amplitude_gauss_sum(manifold15(), p);
        EXPECT_LT(std::abs(g.c_e.real() - e.c_e.real()), 1e-12 * std::abs(e.c_e));
        EXPECT_LT(std::abs(g.c_e.imag() - e.c_e.imag()), 1e-12 * std::abs(e.c_e));
        ASSERT_EQ(g.paths.size(), e.paths.size());
        for (std::size_t k = 0; k < g.paths.size(); ++k)
            EXPECT_EQ(g.paths[k].w_exact, e.paths[k].w_exact);
    }
}

TEST(GaussSum, PhaseFieldIsCanonicalForm) {
    const PulseParams p = chirped(-10824.0);
    const AmplitudeResult g = amplitude_gauss_sum(manifold15(), p);
    const GaussSumParams gp = gauss_sum_params(manifold15(), p);
    for (const PathWeight& w : g.paths) {
        const double canonical = std::numbers::pi / 2 * gp.N * gp.xi + 2 * std::numbers::pi * (w.m + w.m * w.m / gp.N) * gp.xi;
        EXPECT_NEAR(w.phase, canonical, 1e-10 * std::abs(canonical));
    }
}

TEST(GaussSum, RejectsZeroSpacing) {
    EXPECT_THROW(amplitude_gauss_sum(single(), chirped(1.0)), DegenerateManifold);
}

TEST(GaussSum, PeriodicInXiForEvenN) {
    const double N = 16.0;
    std::vector<cplx> weights;
    for (int m = -8; m <= 8; ++m)
        weights.push_back(std::polar(1.0 + 0.1 * m * m, 0.3 * m));
    for (double xi : {0.37, -2.5, 11.0}) {
        const cplx s1 = truncated_gauss_sum(weights, -8, N, xi);
        const cplx s2 = truncated_gauss_sum(weights, -8, N, xi + N);
        EXPECT_LT(std::abs(s1 - s2), 1e-11 * std::abs(s1)) << xi;
    }
}

TEST(GaussSum, PeriodicSystemAmplitude) {
    // N = 2 delta / spacing = 16; a shift of xi by N moves phi2 by pi N / (delta spacing)
    // and changes only the global prefactor.
    const LadderSystem sys = LadderSystem::manifold(0.024, 0.003, -8, 8);
    const PulseParams p1{kOmega0, kBandwidth, -2.1e4};
    const double shift = std::numbers::pi * 16.0 / (sys.delta * sys.spacing);
    const PulseParams p2{kOmega0, kBandwidth, p1.phi2 + shift};
    const auto w1 = path_weights(sys, p1);
    std::vector<cplx> weights;
    for (const PathWeight& w : w1)
        weights.push_back(w.w_exact);
    const GaussSumParams g1 = gauss_sum_params(sys, p1);
    const GaussSumParams g2 = gauss_sum_params(sys, p2);
    EXPECT_NEAR(g2.xi - g1.xi, 16.0, 1e-9);
    const cplx s1 = truncated_gauss_sum(weights, sys.m_lo, g1.N, g1.xi);
    const cplx s2 = truncated_gauss_sum(weights, sys.m_lo, g2.N, g2.xi);
    EXPECT_LT(std::abs(s1 - s2), 1e-9 * std::abs(s1));
}

TEST(GaussSum, UniformWeightsMatchBruteForce) {
    const std::vector<cplx> ones(15, 1.0);
    for (double xi : {1.0, 0.25, -3.7, 123.456}) {
        const cplx ours = truncated_gauss_sum(ones, -7, 15.0, xi);
        const cplx ref = oracles::gauss_sum_mp(ones, -7, 15, oracles::mp50(xi));
        EXPECT_LT(std::abs(ours - ref), 1e-12 * std::max(1.0, std::abs(ref))) << xi;
    }
}

TEST(Asymptotic, NoSequentialPathsForPositiveChirp) {
    const AmplitudeResult r = amplitude_asymptotic(single(), chirped(500.0));
    EXPECT_EQ(r.c_e, cplx(0.0, 0.0));
    EXPECT_FALSE(r.warning.has_value());
}

TEST(Asymptotic, WarnsBelowChirpThreshold) {
    EXPECT_TRUE(amplitude_asymptotic(single(), chirped(-50.0)).warning.has_value());
    EXPECT_FALSE(amplitude_asymptotic(single(), chirped(-150.0)).warning.has_value());
}

TEST(Asymptotic, HalfGaussianWeights) {
    const LadderSystem sys = manifold15();
    const auto weights = path_weights(sys, chirped(-10824.0));
    const double d = derive_levels(sys, chirped(-10824.0)).front().d_m;
    const double width = kBandwidth / 0.003;
    for (const PathWeight& w : weights) {
        const double x = (w.m + 7.5) / width;
        EXPECT_NEAR(-w.w_approx / d, std::exp(-x * x), 1e-14);
    }
    for (const PathWeight& w : path_weights(sys, chirped(10824.0)))
        EXPECT_EQ(w.w_approx, 0.0);
}

TEST(Asymptotic, HeavisideConvention) {
    EXPECT_EQ(heaviside(-1e-300), 0.0);
    EXPECT_EQ(heaviside(0.0), 0.5);
    EXPECT_EQ(heaviside(2.0), 1.0);
    const PathWeight w = path_weights(LadderSystem::single_state(0.0), chirped(-3e3)).front();
    EXPECT_NEAR(w.w_approx, std::real(w.w_exact), 1e-12 * std::abs(w.w_exact));
}

TEST(Asymptotic, LevelsBelowMidpointContributeForPositiveChirp) {
    // Offsets straddling zero: m < -N/2 has negative offset.
    const LadderSystem sys = LadderSystem::manifold(0.006, 0.003, -5, 5);
    for (const PathWeight& w : path_weights(sys, chirped(2000.0))) {
        if (w.m < -2)
            EXPECT_LT(w.w_approx, 0.0) << w.m;
        else if (w.m > -2)
            EXPECT_EQ(w.w_approx, 0.0) << w.m;
        else
            EXPECT_NEAR(w.w_approx, -0.5 * std::numbers::pi / (kBandwidth * kBandwidth), 1e-12);
    }
}

TEST(StationaryTimes, OrderingFollowsSign) {
    const StationaryTimes neg = stationary_times(single(), chirped(-100.0), 0);
    EXPECT_LT(neg.t_first, 0.0);
    EXPECT_GT(neg.t_second, 0.0);
    EXPECT_TRUE(neg.time_ordered);
    const StationaryTimes pos = stationary_times(single(), chirped(100.0), 0);
    EXPECT_FALSE(pos.time_ordered);
    EXPECT_THROW(stationary_times(single(), chirped(0.0), 0), std::domain_error);
    EXPECT_THROW(stationary_times(single(), chirped(1.0), 3), std::out_of_range);
}

TEST(StationaryTimes, CrossingsAreResonant) {
    const PulseParams p = chirped(-1000.0);
    const StationaryTimes s = stationary_times(single(), p, 0);
    EXPECT_NEAR(instantaneous_frequency(p, s.t_first), kOmega0 + 0.0225, 1e-12);
    EXPECT_NEAR(instantaneous_frequency(p, s.t_second), kOmega0 - 0.0225, 1e-12);
}

TEST(StationaryTimes, AreaLaw) {
    const LadderSystem sys = manifold15();
    for (double a : {-1e4, -1000.0, -150.0, 200.0, 3000.0}) {
        const PulseParams p = chirped(a);
        for (const DerivedLevel& lv : derive_levels(sys, p)) {
            const StationaryTimes s = stationary_times(sys, p, lv.m);
            const double eta2 = lv.eta_m * lv.eta_m;
            EXPECT_NEAR(s.area_phase, eta2 * a + eta2 / a, 1e-12 * std::abs(s.area_phase));
            EXPECT_LE(std::abs(s.area_phase - static_cast<double>(path_phase(sys, p, lv.m))),
                      std::abs(eta2 / a) * (1 + 1e-6) + 1e-12 * std::abs(s.area_phase));
        }
    }
}

TEST(Methods, Names) {
    for (Method m : {Method::exact, Method::gauss_sum, Method::asymptotic, Method::oracle_quadrature,
                     Method::oracle_tdse})
        EXPECT_EQ(parse_method(to_string(m)), m);
    EXPECT_FALSE(parse_method("quad").has_value());
    EXPECT_TRUE(is_oracle(Method::oracle_tdse));
    EXPECT_FALSE(is_oracle(Method::gauss_sum));
}
