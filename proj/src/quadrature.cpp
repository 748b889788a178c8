#include "chirpladder/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

namespace chirpladder::oracle {

namespace {

using cplx = std::complex<double>;
constexpr std::size_t P = kPanelOrder;

// Gauss-Legendre nodes on [-1, 1] together with the matrix of partial
// integrals partial[j][k] = int_{-1}^{x_j} L_k(x) dx of the Lagrange basis,
// which gives the running integral at every node of a panel.
struct PanelRule {
    std::array<double, P> x{};
    std::array<double, P> w{};
    std::array<std::array<double, P>, P> partial{};
};

std::array<long double, P + 1> legendre_all(long double x) {
    std::array<long double, P + 1> pn{};
    pn[0] = 1.0L;
    pn[1] = x;
    for (std::size_t n = 1; n < P; ++n)
        pn[n + 1] = ((2.0L * n + 1.0L) * x * pn[n] - static_cast<long double>(n) * pn[n - 1]) / (n + 1.0L);
    return pn;
}

PanelRule build_panel_rule() {
    using rule = boost::math::quadrature::gauss<double, P>;
    const auto& abscissa = rule::abscissa();
    const auto& weights = rule::weights();
    PanelRule r;
    const std::size_t half = P / 2;
    for (std::size_t i = 0; i < half; ++i) {
        r.x[half - 1 - i] = -abscissa[i];
        r.w[half - 1 - i] = weights[i];
        r.x[half + i] = abscissa[i];
        r.w[half + i] = weights[i];
    }
    std::array<std::array<long double, P + 1>, P> leg{};
    for (std::size_t k = 0; k < P; ++k)
        leg[k] = legendre_all(r.x[k]);
    for (std::size_t j = 0; j < P; ++j) {
        for (std::size_t k = 0; k < P; ++k) {
            long double s = 0.5L * (static_cast<long double>(r.x[j]) + 1.0L);
            for (std::size_t n = 1; n < P; ++n)
                s += 0.5L * leg[k][n] * (leg[j][n + 1] - leg[j][n - 1]);
            r.partial[j][k] = static_cast<double>(r.w[k] * s);
        }
    }
    return r;
}

const PanelRule& panel_rule() {
    static const PanelRule rule = build_panel_rule();
    return rule;
}

std::size_t panel_count(std::size_t nodes) {
    return std::max<std::size_t>(1, (nodes + P - 1) / P);
}

template <class F>
cplx integrate(F&& g, double lo, double hi, std::size_t nodes) {
    const PanelRule& rule = panel_rule();
    const std::size_t panels = panel_count(nodes);
    const double width = (hi - lo) / static_cast<double>(panels);
    const double half = 0.5 * width;
    cplx total = 0.0;
    for (std::size_t q = 0; q < panels; ++q) {
        const double mid = lo + (static_cast<double>(q) + 0.5) * width;
        cplx panel = 0.0;
        for (std::size_t j = 0; j < P; ++j)
            panel += rule.w[j] * g(mid + half * rule.x[j]);
        total += half * panel;
    }
    return total;
}

// int_lo^hi dt' outer(t') int_lo^t' dt'' inner(t'')
template <class Outer, class Inner>
cplx integrate_time_ordered(Outer&& outer, Inner&& inner, double lo, double hi, std::size_t nodes) {
    const PanelRule& rule = panel_rule();
    const std::size_t panels = panel_count(nodes);
    const double width = (hi - lo) / static_cast<double>(panels);
    const double half = 0.5 * width;
    std::array<cplx, P> in{};
    cplx running = 0.0;
    cplx total = 0.0;
    for (std::size_t q = 0; q < panels; ++q) {
        const double mid = lo + (static_cast<double>(q) + 0.5) * width;
        for (std::size_t k = 0; k < P; ++k)
            in[k] = inner(mid + half * rule.x[k]);
        cplx panel = 0.0;
        cplx panel_inner = 0.0;
        for (std::size_t j = 0; j < P; ++j) {
            cplx partial = 0.0;
            for (std::size_t k = 0; k < P; ++k)
                partial += rule.partial[j][k] * in[k];
            panel += rule.w[j] * outer(mid + half * rule.x[j]) * (running + half * partial);
            panel_inner += rule.w[j] * in[j];
        }
        total += half * panel;
        running += half * panel_inner;
    }
    return total;
}

double max_abs_offset(std::span<const DerivedLevel> levels) {
    double out = 0.0;
    for (const DerivedLevel& lv : levels)
        out = std::max(out, std::abs(lv.delta_m));
    return out;
}

std::size_t round_up_to_panels(double nodes) {
    const auto n = static_cast<std::size_t>(std::ceil(nodes));
    return panel_count(std::max<std::size_t>(n, P)) * P;
}

} // namespace

std::string_view to_string(Scheme s) noexcept {
    return s == Scheme::nested ? "nested" : "tensor";
}

std::optional<Scheme> parse_scheme(std::string_view name) noexcept {
    if (name == "nested")
        return Scheme::nested;
    if (name == "tensor")
        return Scheme::tensor;
    return std::nullopt;
}

QuadratureSpec default_quadrature_spec(std::span<const DerivedLevel> levels, const PulseParams& p) {
    const ChirpDerived c = derive_chirp(p);
    QuadratureSpec spec;
    spec.t_max = kEnvelopeSpan / std::sqrt(c.alpha_r);
    const double rate = std::max({std::abs(c.alpha_i) * spec.t_max, max_abs_offset(levels), std::sqrt(c.alpha_r)});
    const double h = kPhasePerNode / rate;
    spec.n_points = round_up_to_panels(2.0 * spec.t_max / h * (1.0 + 1e-9));
    return spec;
}

void validate(const QuadratureSpec& spec, std::span<const DerivedLevel> levels, const PulseParams& p) {
    const ChirpDerived c = derive_chirp(p);
    const double min_window = kEnvelopeSpan / std::sqrt(c.alpha_r);
    if (!(spec.t_max >= min_window * (1.0 - 1e-12)))
        throw std::invalid_argument("quadrature: t_max = " + std::to_string(spec.t_max) +
                                    " fs is below 8/sqrt(alpha_r) = " + std::to_string(min_window) + " fs");
    if (spec.n_points < P)
        throw std::invalid_argument("quadrature: n_points must be at least " + std::to_string(P));
    const double h = spec.step();
    const double tol = kPhasePerNode * (1.0 + 1e-9);
    if (std::abs(c.alpha_i) * spec.t_max * h > tol)
        throw std::invalid_argument("quadrature: grid under-resolves the chirp, |alpha_i| t_max h > 0.1");
    if (max_abs_offset(levels) * h > tol)
        throw std::invalid_argument("quadrature: grid under-resolves the offsets, max|delta_m| h > 0.1");
    if (std::sqrt(c.alpha_r) * h > tol)
        throw std::invalid_argument("quadrature: grid under-resolves the envelope, sqrt(alpha_r) h > 0.1");
}

cplx quad_I1(const PulseParams& p, const QuadratureSpec& spec) {
    validate(spec, {}, p);
    const ChirpDerived c = derive_chirp(p);
    const cplx q = 0.25 * std::pow(p.delta_omega * c.f0, 2);
    const double span = 2.0 * spec.t_max;
    return c.f0 * integrate([&](double t) { return std::exp(-q * (t * t)); }, -span, span, 2 * spec.n_points);
}

cplx quad_I2(const DerivedLevel& level, const PulseParams& p, const QuadratureSpec& spec) {
    validate(spec, std::span(&level, 1), p);
    const ChirpDerived c = derive_chirp(p);
    const cplx q = 0.25 * std::pow(p.delta_omega * c.f0, 2);
    const double delta = level.delta_m;
    auto g = [&](double t) {
        const double t2 = t * t;
        return std::exp(cplx(-q.real() * t2, -q.imag() * t2 - delta * t));
    };
    return c.f0 * integrate(g, 0.0, 2.0 * spec.t_max, spec.n_points);
}

cplx quad_Im(const DerivedLevel& level, const PulseParams& p, const QuadratureSpec& spec) {
    validate(spec, std::span(&level, 1), p);
    const ChirpDerived c = derive_chirp(p);
    const double delta = level.delta_m;
    const double T = spec.t_max;

    if (spec.scheme == Scheme::nested) {
        auto outer = [&](double t) { return envelope(c, t) * std::polar(1.0, -delta * t); };
        auto inner = [&](double t) { return envelope(c, t) * std::polar(1.0, delta * t); };
        return integrate_time_ordered(outer, inner, -T, T, spec.n_points);
    }

    // t_bar = t' + t'', t = t' - t'' > 0; dt' dt'' = dt_bar dt / 2.
    const PanelRule& rule = panel_rule();
    const std::size_t panels = panel_count(spec.n_points);
    const double width = 2.0 * T / static_cast<double>(panels);
    std::vector<double> t_nodes;
    std::vector<cplx> t_weights;
    t_nodes.reserve(panels * P);
    t_weights.reserve(panels * P);
    for (std::size_t q = 0; q < panels; ++q) {
        const double mid = (static_cast<double>(q) + 0.5) * width;
        for (std::size_t k = 0; k < P; ++k) {
            const double t = mid + 0.5 * width * rule.x[k];
            t_nodes.push_back(t);
            t_weights.push_back(0.5 * width * rule.w[k] * std::polar(1.0, -delta * t));
        }
    }
    auto row = [&](double t_bar) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < t_nodes.size(); ++i) {
            const double t = t_nodes[i];
            s += t_weights[i] * envelope(c, 0.5 * (t_bar + t)) * envelope(c, 0.5 * (t_bar - t));
        }
        return s;
    };
    return 0.5 * integrate(row, -2.0 * T, 2.0 * T, spec.n_points);
}

cplx quad_full_plane(const DerivedLevel& level, const PulseParams& p, const QuadratureSpec& spec) {
    validate(spec, std::span(&level, 1), p);
    const ChirpDerived c = derive_chirp(p);
    const double delta = level.delta_m;
    const double T = spec.t_max;
    const cplx outer =
        integrate([&](double t) { return envelope(c, t) * std::polar(1.0, -delta * t); }, -T, T, spec.n_points);
    const cplx inner =
        integrate([&](double t) { return envelope(c, t) * std::polar(1.0, delta * t); }, -T, T, spec.n_points);
    return outer * inner;
}

AmplitudeResult amplitude_quadrature(const LadderSystem& sys, const PulseParams& p,
                                     std::optional<QuadratureSpec> spec) {
    const std::vector<DerivedLevel> levels = derive_levels(sys, p);
    const QuadratureSpec s = spec ? *spec : default_quadrature_spec(levels, p);
    validate(s, levels, p);

    AmplitudeResult r;
    r.method = Method::oracle_quadrature;
    r.paths = path_weights(sys, p);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const cplx term = -0.5 * sys.rabi(levels[i].m) * quad_Im(levels[i], p, s);
        r.c_e += term;
        r.paths[i].w_exact = term * std::polar(1.0, -reduce_phase(path_phase(sys, p, levels[i].m)));
    }
    r.W_e = std::norm(r.c_e);
    return r;
}

} // namespace chirpladder::oracle
