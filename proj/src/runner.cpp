#include "chirpladder/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <thread>

#include <json.hpp>

#include "chirpladder/errors.hpp"
#include "chirpladder/oracle.hpp"

namespace chirpladder::cli {

namespace {

using ojson = nlohmann::ordered_json;

template <typename F>
void parallel_for(std::size_t count, F&& body) {
    const std::size_t workers =
        std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (std::thread& t : pool)
        t.join();
    for (const std::exception_ptr& e : errors)
        if (e)
            std::rethrow_exception(e);
}

std::string optional_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

ojson metadata(const RunConfig& cfg, const char* command) {
    ojson meta = ojson::object();
    meta["command"] = command;
    meta["version"] = CHIRPLADDER_VERSION;
    meta["config"] = ojson::parse(to_json_text(cfg));
    return meta;
}

ojson number_or_null(const std::optional<double>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

} // namespace

std::string resolve_output_path(const std::string& path) {
    if (path.empty())
        return path;
    const char* dir = std::getenv(kOutputDirEnv);
    const std::filesystem::path p(path);
    if (dir == nullptr || *dir == '\0' || p.is_absolute())
        return path;
    return (std::filesystem::path(dir) / p).string();
}

AmplitudeResult evaluate(Method method, const LadderSystem& ladder, const PulseParams& pulse,
                         const OracleSettings& settings) {
    switch (method) {
    case Method::exact:
        return amplitude_exact(ladder, pulse);
    case Method::gauss_sum:
        return amplitude_gauss_sum(ladder, pulse);
    case Method::asymptotic:
        return amplitude_asymptotic(ladder, pulse);
    case Method::oracle_quadrature: {
        oracle::QuadratureSpec spec = oracle::default_quadrature_spec(derive_levels(ladder, pulse), pulse);
        if (settings.quad_t_max)
            spec.t_max = *settings.quad_t_max;
        if (settings.quad_points)
            spec.n_points = *settings.quad_points;
        if (settings.quad_scheme)
            spec.scheme = *settings.quad_scheme;
        return oracle::amplitude_quadrature(ladder, pulse, spec);
    }
    case Method::oracle_tdse: {
        oracle::TdseSpec spec = oracle::default_tdse_spec(ladder, pulse, settings.epsilon);
        if (settings.tdse_t_span)
            spec.t_span = *settings.tdse_t_span;
        if (settings.tdse_dt)
            spec.dt = *settings.tdse_dt;
        return oracle::amplitude_tdse(ladder, pulse, spec);
    }
    }
    throw std::invalid_argument("evaluate: unknown method");
}

SweepTable run_sweep(const RunConfig& cfg) {
    validate_sweep(cfg);
    const SweepSpec& sweep = *cfg.sweep;
    const std::vector<double> values = sweep.points();
    const std::size_t n_methods = sweep.methods.size();

    std::vector<SweepRow> rows(values.size() * n_methods);
    std::vector<std::optional<std::string>> warnings(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        const double v = values[i / n_methods];
        const Method method = sweep.methods[i % n_methods];
        const AxisPoint pt = convert_axis(sweep.variable, v, cfg.pulse.delta_omega, cfg.ladder);
        const PulseParams pulse{cfg.pulse.omega0, cfg.pulse.delta_omega, pt.phi2};
        const AmplitudeResult r = evaluate(method, cfg.ladder, pulse, cfg.oracle);
        rows[i] = SweepRow{v, pt.a, pt.xi, r.c_e, r.W_e, method};
        if (r.warning)
            warnings[i] = format_number(v) + ": " + *r.warning;
    });

    SweepTable table;
    table.axis = sweep.variable;
    table.rows = std::move(rows);
    for (auto& w : warnings)
        if (w)
            table.warnings.push_back(std::move(*w));
    return table;
}

std::vector<WeightRow> run_weights(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.ladder.is_single_state() || !(cfg.ladder.spacing > 0.0))
        throw ConfigError("ladder", "the weights table needs a manifold with spacing > 0 and several levels");
    const PulseParams pulse = cfg.pulse.resolve();

    // Unit Rabi products make d_m the same for every level, so |w/d| does
    // not depend on the configured products (and survives a zero product).
    LadderSystem unit = cfg.ladder;
    unit.rabi_product = {1.0};
    const double d = derive_levels(unit, pulse).front().d_m;

    std::vector<WeightRow> out;
    for (const PathWeight& w : path_weights(unit, pulse))
        out.push_back(WeightRow{w.m, std::abs(w.w_exact) / d, std::abs(w.w_approx) / d, w.phase});
    return out;
}

double default_tolerance(Method m) {
    switch (m) {
    case Method::exact: return 0.0;
    case Method::gauss_sum: return 1e-12;
    case Method::asymptotic: return 0.15;
    case Method::oracle_quadrature: return 1e-6;
    case Method::oracle_tdse: return 1e-2;
    }
    return 0.0;
}

bool ComparisonReport::breached() const {
    return std::any_of(summary.begin(), summary.end(), [](const MethodSummary& s) { return s.breaches > 0; });
}

ComparisonReport oracle_compare(const RunConfig& cfg, std::optional<double> tolerance) {
    validate_sweep(cfg);
    const std::vector<Method>& methods = cfg.sweep->methods;
    if (methods.size() < 2)
        throw ConfigError("sweep.methods", "oracle-compare needs at least two methods", cfg.line_of("sweep.methods"));
    const auto ref_it = std::find(methods.begin(), methods.end(), Method::exact) != methods.end()
                            ? std::find(methods.begin(), methods.end(), Method::exact)
                            : std::find_if(methods.begin(), methods.end(), [](Method m) { return !is_oracle(m); });
    if (ref_it == methods.end())
        throw ConfigError("sweep.methods", "oracle-compare needs an analytic method as reference",
                          cfg.line_of("sweep.methods"));
    const std::size_t ref_index = static_cast<std::size_t>(ref_it - methods.begin());

    const SweepTable table = run_sweep(cfg);
    ComparisonReport report;
    report.axis = table.axis;
    report.reference = *ref_it;
    report.warnings = table.warnings;

    auto tol_for = [&](Method m) {
        if (tolerance)
            return *tolerance;
        if (cfg.oracle.tolerance)
            return *cfg.oracle.tolerance;
        return default_tolerance(m);
    };

    const std::size_t n_methods = methods.size();
    for (std::size_t p = 0; p * n_methods < table.rows.size(); ++p) {
        const SweepRow& ref = table.rows[p * n_methods + ref_index];
        const double scale = std::abs(ref.c_e);
        for (std::size_t k = 0; k < n_methods; ++k) {
            if (k == ref_index)
                continue;
            const SweepRow& row = table.rows[p * n_methods + k];
            const double diff = std::abs(row.c_e - ref.c_e);
            report.entries.push_back(
                ComparisonEntry{row.variable, row.method, scale > 0.0 ? diff / scale : diff, tol_for(row.method)});
        }
    }

    for (std::size_t k = 0; k < n_methods; ++k) {
        if (k == ref_index)
            continue;
        MethodSummary s;
        s.method = methods[k];
        s.tolerance = tol_for(methods[k]);
        std::vector<double> rel;
        for (const ComparisonEntry& e : report.entries) {
            if (e.method != s.method)
                continue;
            rel.push_back(e.relative);
            // NaN counts as a breach
            if (!(e.relative <= e.tolerance))
                ++s.breaches;
        }
        std::sort(rel.begin(), rel.end());
        if (!rel.empty()) {
            s.max = rel.back();
            const std::size_t h = rel.size() / 2;
            s.median = rel.size() % 2 ? rel[h] : 0.5 * (rel[h - 1] + rel[h]);
        }
        report.summary.push_back(s);
    }
    return report;
}

void write_sweep(std::ostream& out, const SweepTable& table, const RunConfig& cfg) {
    if (cfg.output.format == Format::json) {
        ojson root = ojson::object();
        root["metadata"] = metadata(cfg, "sweep");
        ojson rows = ojson::array();
        for (const SweepRow& r : table.rows) {
            ojson row = ojson::object();
            row[std::string(to_string(table.axis))] = r.variable;
            row["a"] = r.a;
            row["xi"] = number_or_null(r.xi);
            row["re_ce"] = r.c_e.real();
            row["im_ce"] = r.c_e.imag();
            row["we"] = r.W_e;
            row["method"] = std::string(to_string(r.method));
            rows.push_back(std::move(row));
        }
        root["rows"] = std::move(rows);
        out << root.dump(2) << '\n';
        return;
    }
    out << to_string(table.axis) << ",a,xi,re_ce,im_ce,we,method\n";
    for (const SweepRow& r : table.rows)
        out << format_number(r.variable) << ',' << format_number(r.a) << ',' << optional_number(r.xi) << ','
            << format_number(r.c_e.real()) << ',' << format_number(r.c_e.imag()) << ',' << format_number(r.W_e)
            << ',' << to_string(r.method) << '\n';
}

void write_weights(std::ostream& out, const std::vector<WeightRow>& rows, const RunConfig& cfg) {
    if (cfg.output.format == Format::json) {
        ojson root = ojson::object();
        root["metadata"] = metadata(cfg, "weights");
        ojson list = ojson::array();
        for (const WeightRow& r : rows)
            list.push_back(ojson{{"m", r.m},
                                 {"w_exact_abs", r.w_exact_abs},
                                 {"w_approx_abs", r.w_approx_abs},
                                 {"phase", r.phase}});
        root["rows"] = std::move(list);
        out << root.dump(2) << '\n';
        return;
    }
    out << "m,w_exact_abs,w_approx_abs,phase\n";
    for (const WeightRow& r : rows)
        out << r.m << ',' << format_number(r.w_exact_abs) << ',' << format_number(r.w_approx_abs) << ','
            << format_number(r.phase) << '\n';
}

void write_comparison(std::ostream& out, const ComparisonReport& report, const RunConfig& cfg) {
    const std::string ref(to_string(report.reference));
    if (cfg.output.format == Format::json) {
        ojson root = ojson::object();
        root["metadata"] = metadata(cfg, "oracle-compare");
        root["reference"] = ref;
        ojson summary = ojson::array();
        for (const MethodSummary& s : report.summary)
            summary.push_back(ojson{{"method", std::string(to_string(s.method))},
                                    {"max", s.max},
                                    {"median", s.median},
                                    {"tolerance", s.tolerance},
                                    {"breaches", s.breaches}});
        root["summary"] = std::move(summary);
        ojson rows = ojson::array();
        for (const ComparisonEntry& e : report.entries)
            rows.push_back(ojson{{std::string(to_string(report.axis)), e.variable},
                                 {"method", std::string(to_string(e.method))},
                                 {"relative", e.relative},
                                 {"tolerance", e.tolerance}});
        root["rows"] = std::move(rows);
        out << root.dump(2) << '\n';
        return;
    }
    out << to_string(report.axis) << ",method,reference,relative,tolerance\n";
    for (const ComparisonEntry& e : report.entries)
        out << format_number(e.variable) << ',' << to_string(e.method) << ',' << ref << ','
            << format_number(e.relative) << ',' << format_number(e.tolerance) << '\n';
}

std::string summary_text(const ComparisonReport& report) {
    std::string out;
    for (const MethodSummary& s : report.summary) {
        char line[256];
        std::snprintf(line, sizeof line, "%-12s vs %-10s max %.3e  median %.3e  tol %.1e  %s\n",
                      std::string(to_string(s.method)).c_str(), std::string(to_string(report.reference)).c_str(),
                      s.max, s.median, s.tolerance, s.breaches ? "FAIL" : "ok");
        out += line;
    }
    return out;
}

} // namespace chirpladder::cli
