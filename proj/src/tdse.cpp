#include "chirpladder/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chirpladder/errors.hpp"

namespace chirpladder::oracle {

namespace {

using cplx = std::complex<double>;
constexpr cplx kMinusI{0.0, -1.0};

double fastest_rate(const LadderSystem& sys, const ChirpDerived& c, double t_half) {
    double rate = std::max(std::abs(c.alpha_i) * t_half, std::sqrt(c.alpha_r));
    for (int m = sys.m_lo; m <= sys.m_hi; ++m)
        rate = std::max(rate, std::abs(sys.offset(m)));
    return rate;
}

// State layout: [g, m_lo .. m_hi, e]. Couplings at one instant:
//   up[k]   = <m_k|V|g> = -eps Omega_mg e^{+i delta_m t} f(t)
//   down[k] = <e|V|m_k> = -eps Omega_em e^{-i delta_m t} f(t)
class Ladder {
public:
    Ladder(const LadderSystem& sys, const PulseParams& p, double epsilon)
        : chirp_(derive_chirp(p)) {
        for (int m = sys.m_lo; m <= sys.m_hi; ++m) {
            const double r = sys.rabi(m);
            const double root = std::sqrt(std::abs(r));
            omega_mg_.push_back(epsilon * root);
            omega_em_.push_back(epsilon * (r < 0.0 ? -root : root));
            offsets_.push_back(sys.offset(m));
        }
        up_.resize(offsets_.size());
        down_.resize(offsets_.size());
    }

    std::size_t size() const noexcept { return offsets_.size() + 2; }

    void set_time(double t) {
        const cplx f = envelope(chirp_, t);
        for (std::size_t k = 0; k < offsets_.size(); ++k) {
            const cplx rot = std::polar(1.0, offsets_[k] * t);
            up_[k] = -omega_mg_[k] * rot * f;
            down_[k] = -omega_em_[k] * std::conj(rot) * f;
        }
    }

    // dc/dt = -i V c
    void derivative(const std::vector<cplx>& c, std::vector<cplx>& out) const {
        const std::size_t n = offsets_.size();
        const cplx cg = c[0];
        const cplx ce = c[n + 1];
        cplx to_g = 0.0;
        cplx to_e = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx cm = c[k + 1];
            to_g += std::conj(up_[k]) * cm;
            to_e += down_[k] * cm;
            out[k + 1] = kMinusI * (up_[k] * cg + std::conj(down_[k]) * ce);
        }
        out[0] = kMinusI * to_g;
        out[n + 1] = kMinusI * to_e;
    }

private:
    ChirpDerived chirp_;
    std::vector<double> omega_mg_;
    std::vector<double> omega_em_;
    std::vector<double> offsets_;
    std::vector<cplx> up_;
    std::vector<cplx> down_;
};

} // namespace

TdseSpec default_tdse_spec(const LadderSystem& sys, const PulseParams& p, double epsilon) {
    const ChirpDerived c = derive_chirp(p);
    TdseSpec spec;
    spec.epsilon = epsilon;
    const double t_half = kEnvelopeSpan / std::sqrt(c.alpha_r);
    spec.t_span = 2.0 * t_half;
    const double dt_max = kTdsePhasePerStep / fastest_rate(sys, c, t_half);
    const double steps = std::ceil(spec.t_span / dt_max * (1.0 + 1e-9));
    spec.dt = spec.t_span / steps;
    return spec;
}

void validate(const TdseSpec& spec, const LadderSystem& sys, const PulseParams& p) {
    sys.validate();
    p.validate();
    if (!std::isfinite(spec.epsilon) || spec.epsilon < 0.0)
        throw std::invalid_argument("tdse: epsilon must be finite and >= 0");
    if (!(spec.t_span > 0.0) || !std::isfinite(spec.t_span))
        throw std::invalid_argument("tdse: t_span must be finite and > 0");
    if (!(spec.dt > 0.0) || spec.dt > spec.t_span)
        throw std::invalid_argument("tdse: dt must lie in (0, t_span]");
    const ChirpDerived c = derive_chirp(p);
    const double phase_per_step = spec.dt * fastest_rate(sys, c, 0.5 * spec.t_span);
    if (phase_per_step > kTdsePhasePerStep * (1.0 + 1e-9))
        throw std::invalid_argument("tdse: dt = " + std::to_string(spec.dt) +
                                    " fs under-resolves the fastest phase (" + std::to_string(phase_per_step) +
                                    " rad per step > 0.05)");
}

TdseResult tdse_amplitude(const LadderSystem& sys, const PulseParams& p, const TdseSpec& spec) {
    validate(spec, sys, p);
    Ladder ladder(sys, p, spec.epsilon);
    const std::size_t n = ladder.size();
    const std::size_t steps = static_cast<std::size_t>(std::llround(spec.t_span / spec.dt));
    const double h = spec.t_span / static_cast<double>(steps);
    const double t0 = -0.5 * spec.t_span;

    std::vector<cplx> c(n, 0.0), k1(n), k2(n), k3(n), k4(n), tmp(n);
    c[0] = 1.0;

    TdseResult out;
    auto check = [&] {
        double norm = 0.0;
        double intermediate = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double pop = std::norm(c[i]);
            norm += pop;
            if (i != 0 && i != n - 1)
                intermediate += pop;
        }
        out.norm_drift = std::max(out.norm_drift, std::abs(norm - 1.0));
        out.max_intermediate_population = std::max(out.max_intermediate_population, intermediate);
        if (out.norm_drift > kNormDriftLimit)
            throw NumericalFailure("tdse: norm drift " + std::to_string(out.norm_drift) + " exceeds 1e-8");
    };

    ladder.set_time(t0);
    ladder.derivative(c, k1);
    for (std::size_t s = 0; s < steps; ++s) {
        const double t = t0 + static_cast<double>(s) * h;

        ladder.set_time(t + 0.5 * h);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = c[i] + 0.5 * h * k1[i];
        ladder.derivative(tmp, k2);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = c[i] + 0.5 * h * k2[i];
        ladder.derivative(tmp, k3);

        ladder.set_time(t0 + static_cast<double>(s + 1) * h);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = c[i] + h * k3[i];
        ladder.derivative(tmp, k4);

        for (std::size_t i = 0; i < n; ++i)
            c[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        // The couplings are still set for the end of the step, which is the
        // start of the next one.
        ladder.derivative(c, k1);
        if (s % 1024 == 0)
            check();
    }
    check();

    out.c_g = c.front();
    out.c_e = c.back();
    out.steps = steps;
    return out;
}

AmplitudeResult amplitude_tdse(const LadderSystem& sys, const PulseParams& p, std::optional<TdseSpec> spec) {
    const TdseSpec s = spec ? *spec : default_tdse_spec(sys, p, TdseSpec{}.epsilon);
    if (!(s.epsilon > 0.0))
        throw std::invalid_argument("tdse: epsilon must be > 0 to rescale to the closed-form normalization");
    const TdseResult raw = tdse_amplitude(sys, p, s);
    AmplitudeResult r;
    r.method = Method::oracle_tdse;
    r.c_e = raw.c_e * kTdseToClosedForm / (s.epsilon * s.epsilon);
    r.W_e = std::norm(r.c_e);
    if (!raw.perturbative())
        r.warning = "tdse: intermediate population " + std::to_string(raw.max_intermediate_population) +
                    " exceeds the perturbative bound 1e-3";
    return r;
}

} // namespace chirpladder::oracle
