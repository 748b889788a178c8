#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "chirpladder/config.hpp"
#include "chirpladder/errors.hpp"

using namespace chirpladder;
using namespace chirpladder::cli;

namespace {

const char* kBasic = R"(pulse:
  omega0: 2.4
  delta_omega: 0.1525
  phi2: -1000
ladder:
  delta: 0.0225
  spacing: 0.003
  m_lo: -7
  m_hi: 7
  rabi_product: 1
sweep:
  variable: a
  start: -100
  stop: 100
  n: 11
  methods: [exact, gauss-sum]
)";

int error_line(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

std::string error_field(const RunConfig& cfg) {
    try {
        validate_sweep(cfg);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

} // namespace

TEST(Config, ParsesSections) {
    const RunConfig c = parse_config(kBasic);
    EXPECT_EQ(c.pulse.omega0, 2.4);
    ASSERT_TRUE(c.pulse.phi2.has_value());
    EXPECT_EQ(*c.pulse.phi2, -1000.0);
    EXPECT_FALSE(c.pulse.a.has_value());
    EXPECT_EQ(c.ladder.level_count(), 15);
    ASSERT_TRUE(c.sweep.has_value());
    EXPECT_EQ(c.sweep->variable, Axis::a);
    EXPECT_EQ(c.sweep->n, 11);
    EXPECT_EQ(c.sweep->methods, (std::vector<Method>{Method::exact, Method::gauss_sum}));
    EXPECT_EQ(c.line_of("ladder.spacing"), 7);
    EXPECT_NO_THROW(validate_sweep(c));
}

TEST(Config, RabiList) {
    const RunConfig c = parse_config("ladder:\n  delta: 0.01\n  spacing: 0.002\n  m_lo: -1\n  m_hi: 1\n"
                                     "  rabi_product: [0.5, 1, 2]\n");
    EXPECT_EQ(c.ladder.rabi_product, (std::vector<double>{0.5, 1.0, 2.0}));
}

TEST(Config, ErrorsCarryLineNumbers) {
    EXPECT_EQ(error_line("pulse:\n  omega0: 2.4\n  bandwidth: 0.1\n"), 3);
    EXPECT_EQ(error_line("pulse:\n  omega0: 2.4\nplot:\n  x: 1\n"), 3);
    EXPECT_EQ(error_line("pulse:\n  omega0: fast\n"), 2);
    EXPECT_EQ(error_line("sweep:\n  n: 5\n  scale: cubic\n"), 3);
    EXPECT_EQ(error_line("sweep:\n  methods: [exact, magic]\n"), 2);
    EXPECT_GT(error_line("pulse: [1, 2\n"), 0);

    try {
        parse_config("pulse:\n  omega0: 2.4\n  bandwidth: 0.1\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "pulse.bandwidth");
        EXPECT_NE(std::string(e.what()).find("config:3"), std::string::npos);
    }
}

TEST(Config, PhiAndChirpAreExclusive) {
    EXPECT_THROW(parse_config("pulse:\n  phi2: 1\n  a: 2\n"), ConfigError);
    RunConfig c = parse_config(kBasic);
    apply_override(c, "pulse.a=-500");
    EXPECT_FALSE(c.pulse.phi2.has_value());
    EXPECT_EQ(*c.pulse.a, -500.0);
    EXPECT_NEAR(c.pulse.resolve().chirp(), -500.0, 1e-9);
    c.pulse.phi2 = 3.0;
    EXPECT_THROW(c.pulse.resolve(), ConfigError);
}

TEST(Config, OverridesReportPreviousValue) {
    RunConfig c = parse_config(kBasic);
    EXPECT_EQ(apply_override(c, "sweep.n=21"), "11");
    EXPECT_EQ(c.sweep->n, 21);
    EXPECT_EQ(apply_override(c, "oracle.tolerance=1e-4"), "<unset>");
    EXPECT_EQ(*c.oracle.tolerance, 1e-4);
    apply_override(c, "sweep.methods=[gauss-sum]");
    EXPECT_EQ(c.sweep->methods, std::vector<Method>{Method::gauss_sum});
    apply_override(c, "output.format=json");
    EXPECT_EQ(c.output.format, Format::json);
    EXPECT_THROW(apply_override(c, "sweep.n"), ConfigError);
    EXPECT_THROW(apply_override(c, "sweep.count=3"), ConfigError);
    EXPECT_THROW(apply_override(c, "oracle.quad_points=-4"), ConfigError);
}

TEST(Config, FileOverridesPreset) {
    const RunConfig c = parse_config("preset: fig1-bottom\nsweep:\n  n: 7\n");
    EXPECT_EQ(c.preset, "fig1-bottom");
    EXPECT_EQ(c.sweep->n, 7);
    EXPECT_EQ(c.sweep->start, -5e5);
    EXPECT_EQ(c.ladder.level_count(), 15);
}

TEST(Config, RoundTripIsIdempotent) {
    RunConfig c = parse_config(kBasic);
    apply_override(c, "oracle.quad_scheme=tensor");
    apply_override(c, "sweep.scale=log-symmetric");
    apply_override(c, "sweep.linear_width=0.1");
    apply_override(c, "output.path=out/run.csv");
    apply_override(c, "pulse.phi2=0.1");
    const std::string once = serialize(c);
    const std::string twice = serialize(parse_config(once));
    EXPECT_EQ(once, twice);
    EXPECT_EQ(to_json_text(parse_config(once)), to_json_text(c));
}

TEST(Config, PresetsRoundTrip) {
    for (const PresetInfo& info : presets()) {
        const RunConfig c = expand_preset(info.name);
        EXPECT_NO_THROW(validate(c)) << info.name;
        const RunConfig again = parse_config(serialize(c));
        EXPECT_EQ(serialize(again), serialize(c)) << info.name;
        EXPECT_EQ(serialize(parse_config("preset: " + std::string(info.name) + "\n")), serialize(c));
    }
    EXPECT_THROW(expand_preset("fig2"), ConfigError);
}

TEST(Config, PresetValues) {
    const RunConfig top = expand_preset("fig1-top");
    EXPECT_EQ(top.pulse.omega0, 2.4);
    EXPECT_EQ(top.pulse.delta_omega, 0.1525);
    EXPECT_EQ(top.ladder.delta, 0.0225);
    EXPECT_EQ(top.ladder.level_count(), 1);
    EXPECT_EQ(top.sweep->variable, Axis::phi2);
    EXPECT_EQ(top.sweep->start, -5e5);
    EXPECT_EQ(top.sweep->stop, 5e5);
    EXPECT_EQ(top.sweep->n, 2001);
    EXPECT_NO_THROW(validate_sweep(top));

    const RunConfig bottom = expand_preset("fig1-bottom");
    EXPECT_EQ(bottom.ladder.spacing, 0.003);
    EXPECT_EQ(bottom.ladder.m_lo, -7);
    EXPECT_EQ(bottom.ladder.m_hi, 7);
    EXPECT_NO_THROW(validate_sweep(bottom));

    const RunConfig fig4 = expand_preset("fig4");
    EXPECT_EQ(*fig4.pulse.a, -10824.0);
    EXPECT_FALSE(fig4.sweep.has_value());
    EXPECT_NEAR(fig4.pulse.resolve().phi2, -10824.0 / (0.1525 * 0.1525), 1e-6);
}

TEST(Config, AxisConversion) {
    const LadderSystem sys = LadderSystem::manifold(0.0225, 0.003, -7, 7);
    const AxisPoint p = convert_axis(Axis::phi2, -465424.0, 0.1525, sys);
    EXPECT_NEAR(p.a, -465424.0 * 0.02325625, 1e-6);
    EXPECT_NEAR(*p.xi, 0.0225 * 0.003 * -465424.0 / std::numbers::pi, 1e-9);
    EXPECT_NEAR(*p.xi, -10.0, 0.01);

    const AxisPoint q = convert_axis(Axis::a, -10824.0, 0.1525, sys);
    EXPECT_NEAR(q.phi2, -10824.0 / 0.02325625, 1e-6);

    const AxisPoint r = convert_axis(Axis::xi, -10.0, 0.1525, sys);
    EXPECT_NEAR(r.phi2, -10.0 * std::numbers::pi / 6.75e-5, 1e-6);
    EXPECT_EQ(*r.xi, -10.0);

    EXPECT_FALSE(convert_axis(Axis::phi2, 1.0, 0.1525, LadderSystem::single_state(0.0225)).xi.has_value());
}

TEST(Config, SweepPoints) {
    SweepSpec s;
    s.start = -1.0;
    s.stop = 1.0;
    s.n = 5;
    EXPECT_EQ(s.points(), (std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0}));

    s.scale = Scale::log_symmetric;
    s.start = -1e5;
    s.stop = 1e5;
    s.n = 41;
    s.linear_width = 10.0;
    const std::vector<double> v = s.points();
    ASSERT_EQ(v.size(), 41u);
    EXPECT_EQ(v.front(), -1e5);
    EXPECT_EQ(v.back(), 1e5);
    EXPECT_NEAR(v[20], 0.0, 1e-9);
    for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_NEAR(v[i], -v[v.size() - 1 - i], 1e-9 * std::abs(v[i]) + 1e-12);
        if (i > 0)
            EXPECT_LT(v[i - 1], v[i]);
    }
    // uniform in asinh
    const double step = std::asinh(v[1] / 10.0) - std::asinh(v[0] / 10.0);
    for (std::size_t i = 2; i < v.size(); ++i)
        EXPECT_NEAR(std::asinh(v[i] / 10.0) - std::asinh(v[i - 1] / 10.0), step, 1e-9);
}

TEST(Config, ValidationFields) {
    const RunConfig good = parse_config(kBasic);
    auto broken = [&](const std::string& assignment) {
        RunConfig c = good;
        apply_override(c, assignment);
        return error_field(c);
    };
    EXPECT_EQ(error_field(good), "");
    EXPECT_EQ(broken("pulse.delta_omega=0"), "pulse.delta_omega");
    EXPECT_EQ(broken("pulse.omega0=-1"), "pulse.omega0");
    EXPECT_EQ(broken("ladder.m_lo=1"), "ladder.m_lo");
    EXPECT_EQ(broken("ladder.spacing=0"), "ladder.spacing");
    EXPECT_EQ(broken("ladder.rabi_product=[1, 2]"), "ladder.rabi_product");
    EXPECT_EQ(broken("sweep.n=1"), "sweep.n");
    EXPECT_EQ(broken("sweep.start=200"), "sweep.stop");
    EXPECT_EQ(broken("sweep.methods=[exact, exact]"), "sweep.methods");
    EXPECT_EQ(broken("oracle.epsilon=0"), "oracle.epsilon");

    RunConfig single = good;
    single.ladder = LadderSystem::single_state(0.0225);
    EXPECT_EQ(error_field(single), "sweep.methods");
    apply_override(single, "sweep.methods=[exact]");
    apply_override(single, "sweep.variable=xi");
    EXPECT_EQ(error_field(single), "sweep.variable");

    RunConfig no_sweep = good;
    no_sweep.sweep.reset();
    EXPECT_EQ(error_field(no_sweep), "sweep");
}
