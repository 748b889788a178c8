#include "chirpladder/amplitude.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "chirpladder/cerf.hpp"

namespace chirpladder {

namespace {

using cplx = std::complex<double>;

constexpr std::array<std::pair<Method, std::string_view>, 5> kMethodNames{{
    {Method::exact, "exact"},
    {Method::gauss_sum, "gauss-sum"},
    {Method::asymptotic, "asymptotic"},
    {Method::oracle_quadrature, "oracle-quad"},
    {Method::oracle_tdse, "oracle-tdse"},
}};

AmplitudeResult finish(cplx c_e, std::vector<PathWeight> paths, Method method) {
    AmplitudeResult r;
    r.c_e = c_e;
    r.W_e = std::norm(c_e);
    r.paths = std::move(paths);
    r.method = method;
    return r;
}

} // namespace

std::string_view to_string(Method m) noexcept {
    for (const auto& [method, name] : kMethodNames)
        if (method == m)
            return name;
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
    for (const auto& [method, n] : kMethodNames)
        if (n == name)
            return method;
    return std::nullopt;
}

bool is_oracle(Method m) noexcept {
    return m == Method::oracle_quadrature || m == Method::oracle_tdse;
}

double heaviside(double x) noexcept {
    if (x > 0.0)
        return 1.0;
    if (x < 0.0)
        return 0.0;
    return 0.5;
}

std::vector<PathWeight> path_weights(const LadderSystem& sys, const PulseParams& p) {
    const std::vector<DerivedLevel> levels = derive_levels(sys, p);
    const double a = p.chirp();

    std::vector<PathWeight> out;
    out.reserve(levels.size());
    for (const DerivedLevel& lv : levels) {
        const long double phase = path_phase(sys, p, lv.m);
        // exp(-zeta^2 - eta^2) == exp(-i eta^2 a): the Gaussian factors cancel
        // analytically, leaving erfcx and a pure phase.
        const cplx unwind = std::polar(1.0, -reduce_phase(phase));
        const double gauss = std::exp(-lv.eta_m * lv.eta_m);

        cplx erfc_times_gauss;
        if (lv.zeta_m.real() >= 0.0) {
            erfc_times_gauss = cerf::erfcx(lv.zeta_m) * unwind;
        } else {
            // erfc(zeta) = 2 - erfc(-zeta): sequential term 2 plus the direct term.
            erfc_times_gauss = 2.0 * gauss - cerf::erfcx(-lv.zeta_m) * unwind;
        }

        PathWeight w;
        w.m = lv.m;
        w.w_exact = -0.5 * lv.d_m * erfc_times_gauss;
        w.w_approx = -lv.d_m * heaviside(-lv.eta_m * a) * gauss;
        w.phase = static_cast<double>(phase);
        out.push_back(w);
    }
    return out;
}

AmplitudeResult amplitude_exact(const LadderSystem& sys, const PulseParams& p) {
    std::vector<PathWeight> paths = path_weights(sys, p);
    cplx c_e = 0.0;
    for (const PathWeight& w : paths)
        c_e += w.w_exact * std::polar(1.0, reduce_phase(path_phase(sys, p, w.m)));
    return finish(c_e, std::move(paths), Method::exact);
}

AmplitudeResult amplitude_gauss_sum(const LadderSystem& sys, const PulseParams& p) {
    const long double prefactor = gauss_prefactor_phase(sys, p);
    std::vector<PathWeight> paths = path_weights(sys, p);
    cplx sum = 0.0;
    for (PathWeight& w : paths) {
        const long double index_phase = gauss_index_phase(sys, p, w.m);
        sum += w.w_exact * std::polar(1.0, reduce_phase(index_phase));
        w.phase = static_cast<double>(prefactor + index_phase);
    }
    return finish(std::polar(1.0, reduce_phase(prefactor)) * sum, std::move(paths), Method::gauss_sum);
}

AmplitudeResult amplitude_asymptotic(const LadderSystem& sys, const PulseParams& p) {
    std::vector<PathWeight> paths = path_weights(sys, p);
    cplx c_e = 0.0;
    for (const PathWeight& w : paths)
        c_e += w.w_approx * std::polar(1.0, reduce_phase(path_phase(sys, p, w.m)));
    AmplitudeResult r = finish(c_e, std::move(paths), Method::asymptotic);
    if (std::abs(p.chirp()) < kAsymptoticMinChirp) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "asymptotic weights used at |a| = %g < %g; accuracy not guaranteed",
                      std::abs(p.chirp()), kAsymptoticMinChirp);
        r.warning = buf;
    }
    return r;
}

double single_state_population(const LadderSystem& sys, const PulseParams& p) {
    if (!sys.is_single_state())
        throw std::invalid_argument("single_state_population: system has more than one intermediate level");
    const DerivedLevel lv = derive_levels(sys, p).front();
    const cplx e = cerf::erfc(lv.zeta_m).value;
    return 0.25 * lv.d_m * lv.d_m * std::exp(-2.0 * lv.eta_m * lv.eta_m) * std::norm(e);
}

cplx truncated_gauss_sum(std::span<const cplx> weights, int m_lo, double N, double xi) {
    constexpr long double two_pi = 6.283185307179586476925286766559005768L;
    cplx sum = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const long double m = m_lo + static_cast<long double>(k);
        sum += weights[k] * std::polar(1.0, reduce_phase(two_pi * (m + m * m / N) * xi));
    }
    return sum;
}

StationaryTimes stationary_times(const LadderSystem& sys, const PulseParams& p, int m) {
    sys.validate();
    p.validate();
    if (m < sys.m_lo || m > sys.m_hi)
        throw std::out_of_range("stationary_times: level index outside manifold");
    const ChirpDerived c = derive_chirp(p);
    if (c.alpha_i == 0.0)
        throw std::domain_error("stationary_times: unchirped pulse has no stationary points");
    const double delta_m = sys.offset(m);
    StationaryTimes s;
    s.t_first = delta_m / (2.0 * c.alpha_i);
    s.t_second = -s.t_first;
    s.time_ordered = s.t_first < s.t_second;
    s.area_phase = delta_m * delta_m / (2.0 * c.alpha_i);
    return s;
}

} // namespace chirpladder
