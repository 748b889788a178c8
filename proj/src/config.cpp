#include "chirpladder/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <utility>
#include <variant>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "chirpladder/errors.hpp"

namespace chirpladder::cli {

namespace {

// ---------------------------------------------------------------------------
// Ordered view of a config, shared by the text and JSON writers
// ---------------------------------------------------------------------------

using Value = std::variant<double, long long, std::string, std::vector<double>, std::vector<std::string>>;

struct Entry {
    std::string key;
    Value value;
};

struct Section {
    std::string name;
    std::vector<Entry> entries;
};

std::vector<Section> sections_of(const RunConfig& cfg) {
    std::vector<Section> out;

    Section pulse{"pulse", {}};
    pulse.entries.push_back({"omega0", cfg.pulse.omega0});
    pulse.entries.push_back({"delta_omega", cfg.pulse.delta_omega});
    if (cfg.pulse.phi2)
        pulse.entries.push_back({"phi2", *cfg.pulse.phi2});
    if (cfg.pulse.a)
        pulse.entries.push_back({"a", *cfg.pulse.a});
    out.push_back(std::move(pulse));

    Section ladder{"ladder", {}};
    ladder.entries.push_back({"delta", cfg.ladder.delta});
    ladder.entries.push_back({"spacing", cfg.ladder.spacing});
    ladder.entries.push_back({"m_lo", static_cast<long long>(cfg.ladder.m_lo)});
    ladder.entries.push_back({"m_hi", static_cast<long long>(cfg.ladder.m_hi)});
    if (cfg.ladder.rabi_product.size() == 1)
        ladder.entries.push_back({"rabi_product", cfg.ladder.rabi_product.front()});
    else
        ladder.entries.push_back({"rabi_product", cfg.ladder.rabi_product});
    out.push_back(std::move(ladder));

    if (cfg.sweep) {
        const SweepSpec& s = *cfg.sweep;
        Section sweep{"sweep", {}};
        sweep.entries.push_back({"variable", std::string(to_string(s.variable))});
        sweep.entries.push_back({"start", s.start});
        sweep.entries.push_back({"stop", s.stop});
        sweep.entries.push_back({"n", static_cast<long long>(s.n)});
        sweep.entries.push_back({"scale", std::string(to_string(s.scale))});
        sweep.entries.push_back({"linear_width", s.linear_width});
        std::vector<std::string> methods;
        for (Method m : s.methods)
            methods.emplace_back(to_string(m));
        sweep.entries.push_back({"methods", methods});
        out.push_back(std::move(sweep));
    }

    Section output{"output", {}};
    output.entries.push_back({"path", cfg.output.path});
    output.entries.push_back({"format", std::string(to_string(cfg.output.format))});
    out.push_back(std::move(output));

    const OracleSettings& o = cfg.oracle;
    Section orc{"oracle", {}};
    orc.entries.push_back({"epsilon", o.epsilon});
    if (o.tolerance)
        orc.entries.push_back({"tolerance", *o.tolerance});
    if (o.quad_points)
        orc.entries.push_back({"quad_points", static_cast<long long>(*o.quad_points)});
    if (o.quad_t_max)
        orc.entries.push_back({"quad_t_max", *o.quad_t_max});
    if (o.quad_scheme)
        orc.entries.push_back({"quad_scheme", std::string(oracle::to_string(*o.quad_scheme))});
    if (o.tdse_dt)
        orc.entries.push_back({"tdse_dt", *o.tdse_dt});
    if (o.tdse_t_span)
        orc.entries.push_back({"tdse_t_span", *o.tdse_t_span});
    out.push_back(std::move(orc));

    return out;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string value_text(const Value& v) {
    struct Visitor {
        std::string operator()(double d) const { return format_number(d); }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(const std::string& s) const { return quote(s); }
        std::string operator()(const std::vector<double>& xs) const {
            std::string out = "[";
            for (std::size_t i = 0; i < xs.size(); ++i)
                out += (i ? ", " : "") + format_number(xs[i]);
            return out + "]";
        }
        std::string operator()(const std::vector<std::string>& xs) const {
            std::string out = "[";
            for (std::size_t i = 0; i < xs.size(); ++i)
                out += (i ? ", " : "") + xs[i];
            return out + "]";
        }
    };
    return std::visit(Visitor{}, v);
}

// ---------------------------------------------------------------------------
// Readers
// ---------------------------------------------------------------------------

int line_of(const YAML::Node& n) {
    const YAML::Mark mark = n.Mark();
    return mark.is_null() ? 0 : mark.line + 1;
}

template <typename T>
T scalar(const YAML::Node& n, const std::string& field) {
    if (!n.IsScalar())
        throw ConfigError(field, "expected a single value", line_of(n));
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(field, "cannot read '" + n.Scalar() + "' as " +
                                     (std::is_same_v<T, std::string> ? "text" : "a number"),
                          line_of(n));
    }
}

double real(const YAML::Node& n, const std::string& field) {
    const double v = scalar<double>(n, field);
    if (!std::isfinite(v))
        throw ConfigError(field, "must be finite", line_of(n));
    return v;
}

template <typename E>
E choice(const YAML::Node& n, const std::string& field, std::initializer_list<std::pair<E, std::string_view>> options) {
    const std::string text = scalar<std::string>(n, field);
    std::string allowed;
    for (const auto& [value, name] : options) {
        if (name == text)
            return value;
        allowed += (allowed.empty() ? "" : " | ") + std::string(name);
    }
    throw ConfigError(field, "unknown value '" + text + "', expected " + allowed, line_of(n));
}

using Setter = std::function<void(RunConfig&, const YAML::Node&, const std::string&)>;

SweepSpec& sweep_of(RunConfig& cfg) {
    if (!cfg.sweep)
        cfg.sweep.emplace();
    return *cfg.sweep;
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"pulse.omega0", [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.pulse.omega0 = real(n, f); }},
        {"pulse.delta_omega",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.pulse.delta_omega = real(n, f); }},
        {"pulse.phi2",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) {
             c.pulse.phi2 = real(n, f);
             c.pulse.a.reset();
         }},
        {"pulse.a",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) {
             c.pulse.a = real(n, f);
             c.pulse.phi2.reset();
         }},
        {"ladder.delta", [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.ladder.delta = real(n, f); }},
        {"ladder.spacing",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.ladder.spacing = real(n, f); }},
        {"ladder.m_lo", [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.ladder.m_lo = scalar<int>(n, f); }},
        {"ladder.m_hi", [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.ladder.m_hi = scalar<int>(n, f); }},
        {"ladder.rabi_product",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) {
             std::vector<double> values;
             if (n.IsSequence()) {
                 for (const YAML::Node& item : n)
                     values.push_back(real(item, f));
                 if (values.empty())
                     throw ConfigError(f, "list must not be empty", line_of(n));
             } else {
                 values.push_back(real(n, f));
             }
             c.ladder.rabi_product = std::move(values);
         }},
        {"sweep.variable",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) {
             sweep_of(c).variable = choice<Axis>(n, f, {{Axis::phi2, "phi2"}, {Axis::a, "a"}, {Axis::xi, "xi"}});
         }},
        {"sweep.start", [](RunConfig& c, const YAML::Node& n, const std::string& f) { sweep_of(c).start = real(n, f); }},
        {"sweep.stop", [](RunConfig& c, const YAML::Node& n, const std::string& f) { sweep_of(c).stop = real(n, f); }},
        {"sweep.n", [](RunConfig& c, const YAML::Node& n, const std::string& f) { sweep_of(c).n = scalar<int>(n, f); }},
        {"sweep.scale",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) {
             sweep_of(c).scale =
                 choice<Scale>(n, f, {{Scale::linear, "linear"}, {Scale::log_symmetric, "log-symmetric"}});
         }},
        {"sweep.linear_width",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) { sweep_of(c).linear_width = real(n, f); }},
        {"sweep.methods",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) {
             std::vector<Method> methods;
             auto add = [&](const YAML::Node& item) {
                 const std::string name = scalar<std::string>(item, f);
                 const auto m = parse_method(name);
                 if (!m)
                     throw ConfigError(f,
                                       "unknown method '" + name +
                                           "', expected exact | gauss-sum | asymptotic | oracle-quad | oracle-tdse",
                                       line_of(item));
                 methods.push_back(*m);
             };
             if (n.IsSequence()) {
                 for (const YAML::Node& item : n)
                     add(item);
             } else {
                 add(n);
             }
             sweep_of(c).methods = std::move(methods);
         }},
        {"output.path",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.output.path = scalar<std::string>(n, f); }},
        {"output.format",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) {
             c.output.format = choice<Format>(n, f, {{Format::csv, "csv"}, {Format::json, "json"}});
         }},
        {"oracle.epsilon",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.oracle.epsilon = real(n, f); }},
        {"oracle.tolerance",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.oracle.tolerance = real(n, f); }},
        {"oracle.quad_points",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) {
             const long long v = scalar<long long>(n, f);
             if (v <= 0)
                 throw ConfigError(f, "must be a positive integer", line_of(n));
             c.oracle.quad_points = static_cast<std::size_t>(v);
         }},
        {"oracle.quad_t_max",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.oracle.quad_t_max = real(n, f); }},
        {"oracle.quad_scheme",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) {
             c.oracle.quad_scheme =
                 choice<oracle::Scheme>(n, f, {{oracle::Scheme::nested, "nested"}, {oracle::Scheme::tensor, "tensor"}});
         }},
        {"oracle.tdse_dt",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.oracle.tdse_dt = real(n, f); }},
        {"oracle.tdse_t_span",
         [](RunConfig& c, const YAML::Node& n, const std::string& f) { c.oracle.tdse_t_span = real(n, f); }},
    };
    return table;
}

void apply(RunConfig& cfg, const std::string& field, const YAML::Node& value, int line) {
    const auto& table = setters();
    const auto it = table.find(field);
    if (it == table.end())
        throw ConfigError(field, "unknown key", line);
    it->second(cfg, value, field);
    cfg.lines[field] = line;
}

std::optional<std::string> current_value(const RunConfig& cfg, const std::string& field) {
    const auto dot = field.find('.');
    if (dot == std::string::npos)
        return std::nullopt;
    for (const Section& s : sections_of(cfg)) {
        if (s.name != field.substr(0, dot))
            continue;
        for (const Entry& e : s.entries)
            if (e.key == field.substr(dot + 1))
                return value_text(e.value);
    }
    return std::nullopt;
}

YAML::Node load_yaml(std::string_view text) {
    try {
        return YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError("", e.msg, e.mark.is_null() ? 0 : e.mark.line + 1);
    }
}

RunConfig make_fig1_top() {
    RunConfig c;
    c.preset = "fig1-top";
    c.pulse.omega0 = 2.4;
    c.pulse.delta_omega = 0.1525;
    c.pulse.phi2 = 0.0;
    c.ladder = LadderSystem::single_state(0.0225, 1.0);
    SweepSpec s;
    s.variable = Axis::phi2;
    s.start = -5e5;
    s.stop = 5e5;
    s.n = 2001;
    s.methods = {Method::exact};
    c.sweep = s;
    return c;
}

RunConfig make_fig1_bottom() {
    RunConfig c = make_fig1_top();
    c.preset = "fig1-bottom";
    c.ladder = LadderSystem::manifold(0.0225, 0.003, -7, 7, 1.0);
    return c;
}

RunConfig make_fig4() {
    RunConfig c = make_fig1_bottom();
    c.preset = "fig4";
    c.pulse.phi2.reset();
    c.pulse.a = -10824.0;
    c.sweep.reset();
    return c;
}

} // namespace

std::string_view to_string(Axis a) noexcept {
    switch (a) {
    case Axis::phi2: return "phi2";
    case Axis::a: return "a";
    case Axis::xi: return "xi";
    }
    return "unknown";
}

std::string_view to_string(Scale s) noexcept {
    return s == Scale::linear ? "linear" : "log-symmetric";
}

std::string_view to_string(Format f) noexcept {
    return f == Format::csv ? "csv" : "json";
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> SweepSpec::points() const {
    std::vector<double> out;
    if (n <= 0)
        return out;
    out.reserve(static_cast<std::size_t>(n));
    if (n == 1) {
        out.push_back(start);
        return out;
    }
    const double last = n - 1;
    if (scale == Scale::linear) {
        for (int i = 0; i < n; ++i)
            out.push_back(start + (stop - start) * (i / last));
    } else {
        const double u0 = std::asinh(start / linear_width);
        const double u1 = std::asinh(stop / linear_width);
        for (int i = 0; i < n; ++i)
            out.push_back(linear_width * std::sinh(u0 + (u1 - u0) * (i / last)));
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

PulseParams PulseInput::resolve() const {
    if (phi2.has_value() == a.has_value())
        throw ConfigError("pulse.phi2", "set exactly one of phi2 and a");
    if (a)
        return PulseParams::from_chirp(omega0, delta_omega, *a);
    return PulseParams{omega0, delta_omega, *phi2};
}

int RunConfig::line_of(const std::string& field) const {
    const auto it = lines.find(field);
    return it == lines.end() ? 0 : it->second;
}

const std::vector<PresetInfo>& presets() {
    static const std::vector<PresetInfo> list{
        {"fig1-top", "single intermediate state, delta=0.0225, bandwidth 0.1525, phi2 sweep over +-5e5 fs^2"},
        {"fig1-bottom", "15-level manifold m=-7..7, spacing 0.003, same pulse and sweep as fig1-top"},
        {"fig4", "fig1-bottom ladder at fixed chirp a=-10824 for the weights table"},
    };
    return list;
}

RunConfig expand_preset(std::string_view name) {
    if (name == "fig1-top")
        return make_fig1_top();
    if (name == "fig1-bottom")
        return make_fig1_bottom();
    if (name == "fig4")
        return make_fig4();
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "', expected fig1-top | fig1-bottom | fig4");
}

RunConfig parse_config(std::string_view text, const RunConfig& base) {
    const YAML::Node root = load_yaml(text);
    RunConfig cfg = base;
    if (!root || root.IsNull())
        return cfg;
    if (!root.IsMap())
        throw ConfigError("", "top level must be a mapping of sections", line_of(root));

    if (const YAML::Node p = root["preset"]) {
        const std::string name = scalar<std::string>(p, "preset");
        cfg = expand_preset(name);
        cfg.lines["preset"] = line_of(p);
    }

    for (const auto& item : root) {
        const std::string section = item.first.as<std::string>();
        if (section == "preset")
            continue;
        if (section != "pulse" && section != "ladder" && section != "sweep" && section != "output" &&
            section != "oracle")
            throw ConfigError(section, "unknown section", line_of(item.first));
        const YAML::Node body = item.second;
        if (body.IsNull())
            continue;
        if (!body.IsMap())
            throw ConfigError(section, "section must hold key: value pairs", line_of(body));
        if (section == "pulse" && body["phi2"] && body["a"])
            throw ConfigError("pulse.a", "set exactly one of phi2 and a", line_of(body["a"]));
        for (const auto& kv : body) {
            const std::string field = section + "." + kv.first.as<std::string>();
            apply(cfg, field, kv.second, line_of(kv.first));
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path, const RunConfig& base) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("", "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), base);
}

std::string apply_override(RunConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0)
        throw ConfigError(std::string(assignment), "override must look like section.key=value");
    const std::string field(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    const std::string previous = current_value(cfg, field).value_or("<unset>");
    YAML::Node value = text.empty() ? YAML::Node(std::string()) : load_yaml(text);
    apply(cfg, field, value, 0);
    return previous;
}

void validate(const RunConfig& cfg) {
    auto fail = [&](const std::string& field, const std::string& message) {
        throw ConfigError(field, message, cfg.line_of(field));
    };

    const PulseInput& p = cfg.pulse;
    if (!(p.omega0 > 0.0))
        fail("pulse.omega0", "must be > 0");
    if (!(p.delta_omega > 0.0))
        fail("pulse.delta_omega", "must be > 0");
    if (!p.phi2 && !p.a)
        fail("pulse.phi2", "set one of phi2 and a");
    const PulseParams params = p.resolve();
    if (!std::isfinite(params.phi2) || !std::isfinite(params.chirp()))
        fail(p.a ? "pulse.a" : "pulse.phi2", "chirp is not finite");

    const LadderSystem& l = cfg.ladder;
    if (l.m_lo > 0)
        fail("ladder.m_lo", "must be <= 0");
    if (l.m_hi < 0)
        fail("ladder.m_hi", "must be >= 0");
    if (l.spacing < 0.0)
        fail("ladder.spacing", "must be >= 0");
    if (l.spacing == 0.0 && l.m_lo != l.m_hi)
        fail("ladder.spacing", "must be > 0 for a manifold of " + std::to_string(l.level_count()) + " levels");
    if (l.rabi_product.size() != 1 && l.rabi_product.size() != static_cast<std::size_t>(l.level_count()))
        fail("ladder.rabi_product", "needs 1 or " + std::to_string(l.level_count()) + " values, got " +
                                        std::to_string(l.rabi_product.size()));

    const OracleSettings& o = cfg.oracle;
    if (!(o.epsilon > 0.0))
        fail("oracle.epsilon", "must be > 0");
    if (o.tolerance && !(*o.tolerance > 0.0))
        fail("oracle.tolerance", "must be > 0");
    if (o.quad_t_max && !(*o.quad_t_max > 0.0))
        fail("oracle.quad_t_max", "must be > 0");
    if (o.tdse_dt && !(*o.tdse_dt > 0.0))
        fail("oracle.tdse_dt", "must be > 0");
    if (o.tdse_t_span && !(*o.tdse_t_span > 0.0))
        fail("oracle.tdse_t_span", "must be > 0");
}

void validate_sweep(const RunConfig& cfg) {
    validate(cfg);
    if (!cfg.sweep)
        throw ConfigError("sweep", "section missing");
    const SweepSpec& s = *cfg.sweep;
    auto fail = [&](const std::string& field, const std::string& message) {
        throw ConfigError(field, message, cfg.line_of(field));
    };
    if (s.n < 2)
        fail("sweep.n", "must be >= 2");
    if (!(s.start < s.stop))
        fail("sweep.stop", "start must be < stop");
    if (!(s.linear_width > 0.0))
        fail("sweep.linear_width", "must be > 0");
    if (s.methods.empty())
        fail("sweep.methods", "list at least one method");
    for (std::size_t i = 0; i < s.methods.size(); ++i)
        for (std::size_t j = i + 1; j < s.methods.size(); ++j)
            if (s.methods[i] == s.methods[j])
                fail("sweep.methods", "method '" + std::string(to_string(s.methods[i])) + "' listed twice");
    const bool has_spacing = cfg.ladder.spacing > 0.0;
    if (s.variable == Axis::xi && !has_spacing)
        fail("sweep.variable", "xi sweeps need ladder.spacing > 0");
    if (s.variable == Axis::xi && cfg.ladder.delta == 0.0)
        fail("sweep.variable", "xi sweeps need ladder.delta != 0");
    if (!has_spacing && std::find(s.methods.begin(), s.methods.end(), Method::gauss_sum) != s.methods.end())
        fail("sweep.methods", "gauss-sum needs ladder.spacing > 0");
}

std::string serialize(const RunConfig& cfg) {
    std::string out;
    if (cfg.preset)
        out += "preset: " + quote(*cfg.preset) + "\n";
    for (const Section& s : sections_of(cfg)) {
        out += s.name + ":\n";
        for (const Entry& e : s.entries)
            out += "  " + e.key + ": " + value_text(e.value) + "\n";
    }
    return out;
}

std::string to_json_text(const RunConfig& cfg) {
    nlohmann::ordered_json root = nlohmann::ordered_json::object();
    if (cfg.preset)
        root["preset"] = *cfg.preset;
    for (const Section& s : sections_of(cfg)) {
        nlohmann::ordered_json body = nlohmann::ordered_json::object();
        for (const Entry& e : s.entries)
            std::visit([&](const auto& v) { body[e.key] = v; }, e.value);
        root[s.name] = std::move(body);
    }
    return root.dump();
}

AxisPoint convert_axis(Axis axis, double value, double delta_omega, const LadderSystem& ladder) {
    const double bw2 = delta_omega * delta_omega;
    const double pi = std::numbers::pi;
    AxisPoint pt;
    switch (axis) {
    case Axis::phi2:
        pt.phi2 = value;
        pt.a = bw2 * value;
        break;
    case Axis::a:
        pt.phi2 = value / bw2;
        pt.a = value;
        break;
    case Axis::xi:
        pt.phi2 = pi * value / (ladder.delta * ladder.spacing);
        pt.a = bw2 * pt.phi2;
        pt.xi = value;
        return pt;
    }
    if (ladder.spacing > 0.0)
        pt.xi = ladder.delta * ladder.spacing * pt.phi2 / pi;
    return pt;
}

} // namespace chirpladder::cli
