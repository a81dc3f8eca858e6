#include "squidqnd/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>

#include "squidqnd/constants.hpp"
#include "squidqnd/errors.hpp"

namespace squidqnd {

namespace c = constants;

namespace {

constexpr const char* kModule = "config";

struct UnitSymbol {
    std::string_view symbol;
    double scale;
};

std::vector<UnitSymbol> units_for(Dimension d) {
    switch (d) {
        case Dimension::Mass: return {{"kg", 1.0}, {"g", 1e-3}};
        case Dimension::AngularRate: return {{"rad/s", 1.0}, {"Hz", c::two_pi}};
        case Dimension::Inductance: return {{"H", 1.0}};
        case Dimension::Capacitance: return {{"F", 1.0}};
        case Dimension::Current: return {{"A", 1.0}};
        case Dimension::MagneticField: return {{"T", 1.0}};
        case Dimension::Length: return {{"m", 1.0}};
        case Dimension::Flux: return {{"Wb", 1.0}, {"Phi0", c::flux_quantum}};
        case Dimension::Temperature: return {{"K", 1.0}};
        case Dimension::Time: return {{"s", 1.0}};
        case Dimension::Dimensionless: return {{"1", 1.0}, {"rad", 1.0}};
    }
    return {};
}

constexpr std::array<std::pair<std::string_view, double>, 11> kPrefixes{{
    {"f", 1e-15}, {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6}, {"\xC2\xB5", 1e-6}, {"m", 1e-3},
    {"k", 1e3}, {"M", 1e6}, {"G", 1e9}, {"T", 1e12}, {"c", 1e-2}}};

std::optional<double> unit_scale(std::string_view unit, Dimension d) {
    const auto symbols = units_for(d);
    for (const auto& s : symbols)
        if (unit == s.symbol) return s.scale;
    for (const auto& [prefix, factor] : kPrefixes) {
        if (unit.size() <= prefix.size() || unit.substr(0, prefix.size()) != prefix) continue;
        const std::string_view rest = unit.substr(prefix.size());
        for (const auto& s : symbols)
            if (rest == s.symbol && s.symbol != "Phi0" && s.symbol != "1") return factor * s.scale;
    }
    return std::nullopt;
}

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Config, kModule, msg); }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double parse_number(std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v))
        fail("expected a finite number, got '" + std::string(text) + "'");
    return v;
}

std::size_t parse_count(std::string_view text) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        fail("expected a non-negative integer, got '" + std::string(text) + "'");
    return v;
}

std::string_view unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

std::string display_unit(Dimension d) {
    const auto u = si_unit(d);
    return u.empty() ? std::string{} : " " + std::string(u);
}

constexpr std::array<std::string_view, 8> kReferenceKeys{
    "beta_L", "beta_C", "eta_over_E0", "delta_over_E0",
    "delta_over_h_Hz", "Omega_22_over_2pi_Hz", "zeta_max", "adiabaticity_ratio"};

bool is_frequency_reference(std::string_view name) { return name.ends_with("_Hz"); }

struct Entry {
    std::string value;
    std::size_t line;
};

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
    text = trim(text);
    const auto split = text.find_first_of(" \t");
    const std::string_view number = split == std::string_view::npos ? text : text.substr(0, split);
    const std::string_view unit = split == std::string_view::npos ? std::string_view{} : trim(text.substr(split));
    const double v = parse_number(number);
    if (unit.empty()) {
        if (dim == Dimension::Dimensionless) return v;
        fail("missing unit (expected e.g. '" + std::string(si_unit(dim)) + "')");
    }
    const auto scale = unit_scale(unit, dim);
    if (!scale) fail("unit '" + std::string(unit) + "' does not fit a quantity measured in '" +
                     std::string(si_unit(dim).empty() ? "1" : si_unit(dim)) + "'");
    return v * *scale;
}

std::vector<double> SweepBlock::values() const {
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
        out[i] = scale == SweepScale::Log ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                                          : min + f * (max - min);
    }
    if (points > 1) out.back() = max;
    return out;
}

RunConfig parse_config_string(std::string_view text, std::string_view source) {
    std::map<std::string, Entry> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = std::string(source) + ": line " + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos) fail(where + "expected 'key = value unit'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) fail(where + "empty key");
        if (value.empty()) fail(where + "key '" + key + "' has no value");
        if (auto it = entries.find(key); it != entries.end())
            fail(where + "duplicate key '" + key + "' (first set on line " + std::to_string(it->second.line) + ")");
        entries.emplace(key, Entry{value, line_no});
    }

    RunConfig cfg;
    std::map<std::string, bool> used;
    auto at = [&](const std::string& key, const Entry& e, auto&& f) {
        try {
            f(e.value);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::Config) throw;
            std::string msg = err.what();
            const std::string prefix = std::string(kModule) + ": ";
            if (msg.starts_with(prefix)) msg = msg.substr(prefix.size());
            fail(std::string(source) + ": line " + std::to_string(e.line) + ": key '" + key + "': " + msg);
        }
        used[key] = true;
    };
    auto take = [&](const std::string& key, auto&& f) {
        if (auto it = entries.find(key); it != entries.end()) {
            at(key, it->second, f);
            return true;
        }
        return false;
    };
    auto require = [&](const std::string& key, auto&& f) {
        if (!take(key, f)) fail(std::string(source) + ": missing required key '" + key + "'");
    };

    // Device block.
    DeviceParams& d = cfg.device;
    for (const FieldInfo& field : device_fields()) {
        const std::string key(field.name);
        auto setter = [&](const std::string& v) { d.*field.member = parse_quantity(v, field.dimension); };
        if (key == "L" || key == "M" || key == "Phi_e" || key == "I_in_amp" || key == "omega_d") {
            take(key, setter);
        } else {
            require(key, setter);
        }
    }
    std::optional<double> omega_e, coupling_K;
    take("omega_e", [&](const std::string& v) { omega_e = parse_quantity(v, Dimension::AngularRate); });
    take("K", [&](const std::string& v) { coupling_K = parse_quantity(v, Dimension::Dimensionless); });
    const std::string src(source);
    if (entries.count("L") && omega_e) fail(src + ": give either 'L' or 'omega_e', not both");
    if (!entries.count("L")) {
        if (!omega_e) fail(src + ": missing required key 'L' (or 'omega_e')");
        if (!(*omega_e > 0.0) || !(d.C > 0.0)) fail(src + ": 'omega_e' and 'C' must be positive");
        d.L = 1.0 / (*omega_e * *omega_e * d.C);
    }
    if (entries.count("M") && coupling_K) fail(src + ": give either 'M' or 'K', not both");
    if (!entries.count("M")) {
        if (!coupling_K) fail(src + ": missing required key 'M' (or 'K')");
        d.M = *coupling_K * std::sqrt(d.Lambda * d.L);
    }
    if (!entries.count("Phi_e")) d.Phi_e = 0.5 * c::flux_quantum;
    if (!entries.count("omega_d")) d.omega_d = d.omega_e();
    try {
        d.validate();
    } catch (const Error& e) {
        fail(src + ": invalid device parameters: " + e.what());
    }

    auto real = [](double& out, Dimension dim) {
        return [&out, dim](const std::string& v) { out = parse_quantity(v, dim); };
    };
    auto opt_real = [](std::optional<double>& out, Dimension dim) {
        return [&out, dim](const std::string& v) { out = parse_quantity(v, dim); };
    };
    auto count = [](std::size_t& out) { return [&out](const std::string& v) { out = parse_count(v); }; };
    auto positive = [&](const std::string& key, double v) {
        if (!(v > 0.0)) fail(src + ": key '" + key + "' must be positive");
    };

    // Solver block.
    take("solver.n_points", [&](const std::string& v) { cfg.solver.n_points = parse_count(v); });
    take("solver.half_width", opt_real(cfg.solver.half_width, Dimension::Dimensionless));
    take("solver.convergence_tolerance", real(cfg.solver.convergence_tolerance, Dimension::Dimensionless));
    take("solver.leak_tolerance", real(cfg.solver.leak_tolerance, Dimension::Dimensionless));
    if (cfg.solver.n_points.has_value() != cfg.solver.half_width.has_value())
        fail(src + ": 'solver.n_points' and 'solver.half_width' must be given together");
    if (cfg.solver.n_points && *cfg.solver.n_points < 3) fail(src + ": 'solver.n_points' must be >= 3");
    if (cfg.solver.half_width) positive("solver.half_width", *cfg.solver.half_width);
    positive("solver.convergence_tolerance", cfg.solver.convergence_tolerance);
    positive("solver.leak_tolerance", cfg.solver.leak_tolerance);

    // Fit block.
    take("fit.n_samples", count(cfg.fit.n_samples));
    take("fit.margin_ratio", real(cfg.fit.margin_ratio, Dimension::Dimensionless));
    take("fit.quartic_extent", real(cfg.fit.quartic_extent, Dimension::Dimensionless));
    take("fit.quartic_points", count(cfg.fit.quartic_points));
    if (cfg.fit.n_samples < 3) fail(src + ": 'fit.n_samples' must be >= 3");
    if (!(cfg.fit.margin_ratio > 1.0)) fail(src + ": 'fit.margin_ratio' must exceed 1");
    positive("fit.quartic_extent", cfg.fit.quartic_extent);

    // Sweep block; bounds are parsed in the swept field's unit.
    take("sweep.parameter", [&](const std::string& v) { cfg.sweep.parameter = std::string(unquote(v)); });
    if (!cfg.sweep.parameter.empty()) {
        const FieldInfo* field = find_device_field(cfg.sweep.parameter);
        if (!field)
            fail(src + ": line " + std::to_string(entries.at("sweep.parameter").line) + ": sweep parameter '" +
                 cfg.sweep.parameter + "' is not a device field");
        require("sweep.min", real(cfg.sweep.min, field->dimension));
        require("sweep.max", real(cfg.sweep.max, field->dimension));
        require("sweep.points", count(cfg.sweep.points));
        take("sweep.scale", [&](const std::string& v) {
            const auto s = unquote(v);
            if (s == "linear") cfg.sweep.scale = SweepScale::Linear;
            else if (s == "log") cfg.sweep.scale = SweepScale::Log;
            else fail("expected 'linear' or 'log'");
        });
        if (cfg.sweep.points == 0) fail(src + ": 'sweep.points' must be >= 1");
        if (cfg.sweep.points > 1 && !(cfg.sweep.min < cfg.sweep.max))
            fail(src + ": sweep range must satisfy min < max");
        if (cfg.sweep.scale == SweepScale::Log && !(cfg.sweep.min > 0.0))
            fail(src + ": log sweep needs a positive range");
    }

    // Dynamics block.
    take("dynamics.n_m_max", count(cfg.dynamics.n_m_max));
    take("dynamics.n_e_max", [&](const std::string& v) { cfg.dynamics.n_e_max = parse_count(v); });
    take("dynamics.drive_fraction", real(cfg.dynamics.drive_fraction, Dimension::Dimensionless));
    take("dynamics.detuning_min", opt_real(cfg.dynamics.detuning_min, Dimension::AngularRate));
    take("dynamics.detuning_max", opt_real(cfg.dynamics.detuning_max, Dimension::AngularRate));
    take("dynamics.detuning_points", count(cfg.dynamics.detuning_points));
    take("dynamics.thermal_photons", real(cfg.dynamics.thermal_photons, Dimension::Dimensionless));
    if (cfg.dynamics.detuning_min.has_value() != cfg.dynamics.detuning_max.has_value())
        fail(src + ": 'dynamics.detuning_min' and 'dynamics.detuning_max' must be given together");
    if (cfg.dynamics.detuning_min && !(*cfg.dynamics.detuning_min < *cfg.dynamics.detuning_max))
        fail(src + ": detuning range must satisfy min < max");
    if (cfg.dynamics.detuning_points < 2) fail(src + ": 'dynamics.detuning_points' must be >= 2");
    if (cfg.dynamics.n_e_max && *cfg.dynamics.n_e_max < 2) fail(src + ": 'dynamics.n_e_max' must be >= 2");
    if (cfg.dynamics.drive_fraction < 0.0) fail(src + ": 'dynamics.drive_fraction' must be >= 0");
    if (cfg.dynamics.thermal_photons < 0.0) fail(src + ": 'dynamics.thermal_photons' must be >= 0");

    // Trajectory block.
    take("trajectory.duration", opt_real(cfg.trajectory.duration, Dimension::Time));
    take("trajectory.dt", opt_real(cfg.trajectory.dt, Dimension::Time));
    take("trajectory.record_every", count(cfg.trajectory.record_every));
    take("trajectory.integrator", [&](const std::string& v) {
        const auto s = unquote(v);
        if (s == "yoshida4") cfg.trajectory.integrator = Integrator::Yoshida4;
        else if (s == "verlet") cfg.trajectory.integrator = Integrator::VelocityVerlet;
        else fail("expected 'yoshida4' or 'verlet'");
    });
    take("trajectory.x0", real(cfg.trajectory.x0, Dimension::Length));
    take("trajectory.phi_offset", real(cfg.trajectory.phi_offset, Dimension::Flux));
    take("trajectory.well", [&](const std::string& v) {
        const auto s = unquote(v);
        if (s == "left") cfg.trajectory.well = -1;
        else if (s == "right") cfg.trajectory.well = 1;
        else fail("expected 'left' or 'right'");
    });
    if (cfg.trajectory.duration) positive("trajectory.duration", *cfg.trajectory.duration);
    if (cfg.trajectory.dt) positive("trajectory.dt", *cfg.trajectory.dt);
    if (cfg.trajectory.record_every == 0) fail(src + ": 'trajectory.record_every' must be >= 1");

    // Spectrum block.
    take("spectrum.phi0", real(cfg.spectrum.phi0, Dimension::Dimensionless));
    take("spectrum.levels", count(cfg.spectrum.levels));
    take("spectrum.phi0_min", real(cfg.spectrum.phi0_min, Dimension::Dimensionless));
    take("spectrum.phi0_max", real(cfg.spectrum.phi0_max, Dimension::Dimensionless));
    take("spectrum.phi0_points", count(cfg.spectrum.phi0_points));
    if (cfg.spectrum.levels < 1) fail(src + ": 'spectrum.levels' must be >= 1");
    if (cfg.spectrum.phi0_points < 1) fail(src + ": 'spectrum.phi0_points' must be >= 1");
    if (cfg.spectrum.phi0_points > 1 && !(cfg.spectrum.phi0_min < cfg.spectrum.phi0_max))
        fail(src + ": spectrum phi0 range must satisfy min < max");

    // Output block.
    take("output.dir", [&](const std::string& v) { cfg.output.dir = std::string(unquote(v)); });
    take("output.formats", [&](const std::string& v) {
        cfg.output.json = cfg.output.csv = false;
        std::stringstream ss{std::string(unquote(v))};
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto f = trim(item);
            if (f == "json") cfg.output.json = true;
            else if (f == "csv") cfg.output.csv = true;
            else fail("unknown format '" + std::string(f) + "' (expected json, csv)");
        }
    });

    // Reference values.
    for (const auto& name : kReferenceKeys) {
        const std::string key = "reference." + std::string(name);
        take(key, [&](const std::string& v) {
            cfg.reference[std::string(name)] =
                is_frequency_reference(name) ? parse_quantity(v, Dimension::AngularRate) / c::two_pi
                                             : parse_quantity(v, Dimension::Dimensionless);
        });
    }

    for (const auto& [key, e] : entries)
        if (!used.count(key))
            fail(src + ": line " + std::to_string(e.line) + ": unknown key '" + key + "'");
    return cfg;
}

ReportOptions to_report_options(const RunConfig& cfg) {
    ReportOptions o;
    o.fit.n_samples = cfg.fit.n_samples;
    o.fit.margin_ratio = cfg.fit.margin_ratio;
    o.fit.solver.convergence_tolerance = cfg.solver.convergence_tolerance;
    o.fit.solver.leak_tolerance = cfg.solver.leak_tolerance;
    if (cfg.solver.n_points) o.grid_override = Grid::centered(0.0, *cfg.solver.half_width, *cfg.solver.n_points);
    o.quartic_points = cfg.fit.quartic_points;
    o.quartic_extent = cfg.fit.quartic_extent;
    return o;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_string(buf.str(), path);
}

std::vector<std::string> RunConfig::resolved_lines() const {
    std::vector<std::string> out;
    auto add = [&](const std::string& key, const std::string& value) { out.push_back(key + " = " + value); };
    auto opt = [&](const std::optional<double>& v, const std::string& unit) {
        return v ? fmt(*v) + unit : std::string("auto");
    };
    for (const FieldInfo& f : device_fields()) add(std::string(f.name), fmt(device.*f.member) + display_unit(f.dimension));
    add("solver.n_points", solver.n_points ? std::to_string(*solver.n_points) : "auto");
    add("solver.half_width", opt(solver.half_width, ""));
    add("solver.convergence_tolerance", fmt(solver.convergence_tolerance));
    add("solver.leak_tolerance", fmt(solver.leak_tolerance));
    add("fit.n_samples", std::to_string(fit.n_samples));
    add("fit.margin_ratio", fmt(fit.margin_ratio));
    add("fit.quartic_extent", fmt(fit.quartic_extent));
    add("fit.quartic_points", std::to_string(fit.quartic_points));
    if (!sweep.parameter.empty()) {
        const FieldInfo* f = find_device_field(sweep.parameter);
        const std::string unit = f ? display_unit(f->dimension) : std::string{};
        add("sweep.parameter", sweep.parameter);
        add("sweep.min", fmt(sweep.min) + unit);
        add("sweep.max", fmt(sweep.max) + unit);
        add("sweep.points", std::to_string(sweep.points));
        add("sweep.scale", sweep.scale == SweepScale::Log ? "log" : "linear");
    }
    add("dynamics.n_m_max", std::to_string(dynamics.n_m_max));
    add("dynamics.n_e_max", dynamics.n_e_max ? std::to_string(*dynamics.n_e_max) : "auto");
    add("dynamics.drive_fraction", fmt(dynamics.drive_fraction));
    add("dynamics.detuning_min", opt(dynamics.detuning_min, " rad/s"));
    add("dynamics.detuning_max", opt(dynamics.detuning_max, " rad/s"));
    add("dynamics.detuning_points", std::to_string(dynamics.detuning_points));
    add("dynamics.thermal_photons", fmt(dynamics.thermal_photons));
    add("trajectory.duration", opt(trajectory.duration, " s"));
    add("trajectory.dt", opt(trajectory.dt, " s"));
    add("trajectory.record_every", std::to_string(trajectory.record_every));
    add("trajectory.integrator", trajectory.integrator == Integrator::Yoshida4 ? "yoshida4" : "verlet");
    add("trajectory.x0", fmt(trajectory.x0) + " m");
    add("trajectory.phi_offset", fmt(trajectory.phi_offset) + " Wb");
    add("trajectory.well", trajectory.well < 0 ? "left" : "right");
    add("spectrum.phi0", fmt(spectrum.phi0));
    add("spectrum.levels", std::to_string(spectrum.levels));
    add("spectrum.phi0_min", fmt(spectrum.phi0_min));
    add("spectrum.phi0_max", fmt(spectrum.phi0_max));
    add("spectrum.phi0_points", std::to_string(spectrum.phi0_points));
    std::string formats;
    if (output.json) formats += "json";
    if (output.csv) formats += formats.empty() ? "csv" : ",csv";
    add("output.formats", formats);
    for (const auto& [k, v] : reference) add("reference." + k, fmt(v) + (is_frequency_reference(k) ? " Hz" : ""));
    return out;
}

}  // namespace squidqnd
