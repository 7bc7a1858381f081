#include "qbath/run.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qbath/density.hpp"
#include "qbath/dynamics.hpp"
#include "qbath/entanglement.hpp"
#include "qbath/numerics.hpp"
#include "qbath/pseudomode.hpp"
#include "qbath/version.hpp"

namespace qbath {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> known_artifacts = {
    "population", "concurrence", "spectrum", "e_atom",
    "e_modes",    "e_modes_infinity", "peaks"};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size())
            throw ConfigError(key + ": not a number '" + value + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number '" + value + "'");
    }
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    const double v = parse_number(key, value);
    if (v < 0.0 || v != std::floor(v))
        throw ConfigError(key + ": must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            if (std::string t = trim(cur); !t.empty()) out.push_back(t);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (std::string t = trim(cur); !t.empty()) out.push_back(t);
    return out;
}

// decimal text with 12 significant digits, '.' separator
std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const std::string& header) : path_(path.string()) {
        out_.open(path, std::ios::binary);
        if (!out_)
            throw ConfigError("directory: cannot open '" + path.string() + "' for writing");
        out_ << header << "\n";
    }
    void row(std::span<const double> cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out_ << ",";
            out_ << format_number(cells[k]);
        }
        out_ << "\n";
        ++rows_;
    }
    void raw_row(const std::string& line) {
        out_ << line << "\n";
        ++rows_;
    }
    std::size_t rows() const { return rows_; }
    const std::string& path() const { return path_; }

  private:
    std::ofstream out_;
    std::string path_;
    std::size_t rows_{0};
};

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t k = 0; k < n; ++k)
        xs[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return xs;
}

// indices of at most `limit` evenly spread samples of 0..n-1 (endpoints kept)
std::vector<std::size_t> downsample_indices(std::size_t n, std::size_t limit) {
    std::vector<std::size_t> idx;
    if (n == 0) return idx;
    if (n <= limit) {
        idx.resize(n);
        for (std::size_t k = 0; k < n; ++k) idx[k] = k;
        return idx;
    }
    idx.reserve(limit);
    for (std::size_t k = 0; k < limit; ++k) {
        const std::size_t j = static_cast<std::size_t>(std::llround(
            static_cast<double>(k) * static_cast<double>(n - 1) /
            static_cast<double>(limit - 1)));
        if (idx.empty() || idx.back() != j) idx.push_back(j);
    }
    return idx;
}

} // namespace

// ----------------------------------------------------------------------------
// configuration

ScenarioConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string section;
    std::size_t lineno = 0;
    std::string line;
    std::istringstream stream(text);
    while (std::getline(stream, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section != "physical" && section != "bath" && section != "time" &&
                section != "output")
                throw ConfigError("section: unknown section '" + section + "'");
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        sections[section][key] = value;
    }

    auto has = [&](const std::string& sec, const std::string& key) {
        auto s = sections.find(sec);
        return s != sections.end() && s->second.count(key) > 0;
    };
    auto get = [&](const std::string& sec, const std::string& key) {
        return sections.at(sec).at(key);
    };
    auto check_known = [&](const std::string& sec, std::initializer_list<const char*> keys) {
        auto s = sections.find(sec);
        if (s == sections.end()) return;
        for (const auto& [key, value] : s->second) {
            bool ok = false;
            for (const char* k : keys) ok = ok || key == k;
            if (!ok)
                throw ConfigError(key + ": unknown key in [" + sec + "]");
        }
    };
    check_known("physical", {"gamma", "omega0_coupling", "coupling_ratio", "atom_frequency",
                             "reservoir_center", "detuning"});
    check_known("bath", {"n_modes", "half_span"});
    check_known("time", {"t_end", "dt", "sample_every"});
    check_known("output", {"directory", "artifacts", "method", "cross_method_tol"});

    ScenarioConfig cfg;

    if (!has("physical", "gamma"))
        throw ConfigError("gamma: required");
    cfg.params.gamma = parse_number("gamma", get("physical", "gamma"));

    const bool has_abs = has("physical", "omega0_coupling");
    const bool has_ratio = has("physical", "coupling_ratio");
    if (has_abs && has_ratio)
        throw ConfigError("omega0_coupling: conflicts with coupling_ratio");
    if (!has_abs && !has_ratio)
        throw ConfigError("omega0_coupling: required (or coupling_ratio)");
    cfg.params.omega0_coupling =
        has_abs ? parse_number("omega0_coupling", get("physical", "omega0_coupling"))
                : parse_number("coupling_ratio", get("physical", "coupling_ratio")) *
                      cfg.params.gamma;

    cfg.params.atom_frequency =
        has("physical", "atom_frequency")
            ? parse_number("atom_frequency", get("physical", "atom_frequency"))
            : 0.0;

    const bool has_det = has("physical", "detuning");
    const bool has_center = has("physical", "reservoir_center");
    double det = has_det ? parse_number("detuning", get("physical", "detuning")) : 0.0;
    if (has_center) {
        const double rc = parse_number("reservoir_center", get("physical", "reservoir_center"));
        if (has_det) {
            const double scale = std::max({1.0, std::abs(rc), std::abs(cfg.params.atom_frequency)});
            if (std::abs(rc - (cfg.params.atom_frequency + det)) > 1e-9 * scale)
                throw ConfigError("reservoir_center: inconsistent with detuning");
        }
        cfg.params.reservoir_center = rc;
    } else {
        cfg.params.reservoir_center = cfg.params.atom_frequency + det;
    }
    cfg.params = validate_params(cfg.params);

    if (has("bath", "n_modes")) {
        cfg.n_modes = parse_count("n_modes", get("bath", "n_modes"));
        if (cfg.n_modes < 2)
            throw ConfigError("n_modes: must be at least 2");
    }
    if (has("bath", "half_span")) {
        cfg.half_span = parse_number("half_span", get("bath", "half_span"));
        if (!(cfg.half_span > 0.0))
            throw ConfigError("half_span: must be positive");
    }

    if (!has("time", "t_end"))
        throw ConfigError("t_end: required");
    cfg.t_end = parse_number("t_end", get("time", "t_end"));
    if (cfg.t_end < 0.0)
        throw ConfigError("t_end: must be non-negative");
    if (has("time", "dt")) {
        cfg.dt = parse_number("dt", get("time", "dt"));
        if (cfg.dt < 0.0)
            throw ConfigError("dt: must be positive");
    }
    if (has("time", "sample_every"))
        cfg.sample_every = parse_count("sample_every", get("time", "sample_every"));

    if (has("output", "directory")) cfg.directory = get("output", "directory");
    if (has("output", "artifacts")) {
        cfg.artifacts = split_list(get("output", "artifacts"));
        if (cfg.artifacts.empty())
            throw ConfigError("artifacts: list is empty");
        for (const std::string& a : cfg.artifacts)
            if (!known_artifacts.count(a))
                throw ConfigError("artifacts: unknown artifact '" + a + "'");
    }
    if (has("output", "method")) {
        const std::string m = get("output", "method");
        if (m == "discrete")
            cfg.method = Method::discrete;
        else if (m == "analytic")
            cfg.method = Method::analytic;
        else if (m == "both")
            cfg.method = Method::both;
        else
            throw ConfigError("method: must be discrete, analytic or both");
    }
    if (has("output", "cross_method_tol")) {
        cfg.cross_method_tol = parse_number("cross_method_tol", get("output", "cross_method_tol"));
        if (!(cfg.cross_method_tol > 0.0))
            throw ConfigError("cross_method_tol: must be positive");
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot read '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

ScenarioConfig apply_axis_value(ScenarioConfig base, const std::string& axis, double value) {
    if (axis == "gamma") {
        base.params.gamma = value;
    } else if (axis == "omega0_coupling") {
        base.params.omega0_coupling = value;
    } else if (axis == "coupling_ratio") {
        base.params.omega0_coupling = value * base.params.gamma;
    } else if (axis == "detuning") {
        base.params.reservoir_center = base.params.atom_frequency + value;
    } else if (axis == "atom_frequency") {
        base.params.atom_frequency = value;
    } else if (axis == "reservoir_center") {
        base.params.reservoir_center = value;
    } else if (axis == "n_modes") {
        if (value < 2.0 || value != std::floor(value))
            throw ConfigError("n_modes: must be an integer >= 2");
        base.n_modes = static_cast<std::size_t>(value);
    } else if (axis == "half_span") {
        if (!(value > 0.0))
            throw ConfigError("half_span: must be positive");
        base.half_span = value;
    } else {
        throw ConfigError("axis: unknown parameter '" + axis + "'");
    }
    base.params = validate_params(base.params);
    return base;
}

// ----------------------------------------------------------------------------
// manifest

void write_manifest(const RunManifest& m, const std::string& path) {
    json j;
    j["version"] = m.version;
    j["config"] = json::parse(m.config_echo);
    j["files"] = json::array();
    for (const ManifestFile& f : m.files)
        j["files"].push_back({{"name", f.name}, {"rows", f.rows}});
    j["diagnostics"]["norm_drift"] = m.norm_drift;
    if (m.cross_method_max_dev)
        j["diagnostics"]["cross_method_max_dev"] = *m.cross_method_max_dev;
    else
        j["diagnostics"]["cross_method_max_dev"] = nullptr;
    j["duration_seconds"] = m.duration_seconds;

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("directory: cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
}

// ----------------------------------------------------------------------------
// scenario runner

namespace {

struct ResolvedScenario {
    ScenarioConfig input;       // absolute units, defaults applied
    PhysicalParams scaled;      // Gamma = 1 units, atom frequency at 0
    double t_end{0.0};          // Gamma * t
    double dt{0.0};             // Gamma * dt (0 = integrator default)
    double half_span{0.0};      // in Gamma units
    std::size_t n_modes{0};
};

std::size_t auto_mode_count(const PhysicalParams& scaled, double half_span, Method method) {
    if (method != Method::analytic) return 2001;
    // resolve the narrower of the bare linewidth and the weak-coupling emission line
    const double o = scaled.omega0_coupling;
    const double width = std::min(1.0, 4.0 * o * o);
    const double target = width / 8.0;
    const std::size_t n = 2 * static_cast<std::size_t>(std::ceil(half_span / target)) + 1;
    return std::clamp<std::size_t>(n, 2001, 200001);
}

ResolvedScenario resolve(const ScenarioConfig& config) {
    ResolvedScenario r;
    r.input = config;
    r.input.params = validate_params(config.params);

    const double g = r.input.params.gamma;
    r.scaled.gamma = 1.0;
    r.scaled.omega0_coupling = r.input.params.omega0_coupling / g;
    r.scaled.atom_frequency = 0.0;
    r.scaled.reservoir_center = r.input.params.detuning / g;
    r.scaled = validate_params(r.scaled);

    r.t_end = config.t_end * g;
    r.dt = config.dt * g;
    r.half_span = (config.half_span > 0.0) ? config.half_span / g
                                           : default_half_span(r.scaled);
    r.n_modes = config.n_modes ? config.n_modes
                               : auto_mode_count(r.scaled, r.half_span, config.method);
    r.input.half_span = r.half_span * g;
    r.input.n_modes = r.n_modes;
    return r;
}

std::string config_echo_json(const ScenarioConfig& c) {
    json j;
    j["gamma"] = c.params.gamma;
    j["omega0_coupling"] = c.params.omega0_coupling;
    j["atom_frequency"] = c.params.atom_frequency;
    j["reservoir_center"] = c.params.reservoir_center;
    j["detuning"] = c.params.detuning;
    j["n_modes"] = c.n_modes;
    j["half_span"] = c.half_span;
    j["t_end"] = c.t_end;
    j["dt"] = c.dt;
    j["sample_every"] = c.sample_every;
    j["directory"] = c.directory;
    j["artifacts"] = c.artifacts;
    j["method"] = c.method == Method::discrete ? "discrete"
                : c.method == Method::analytic ? "analytic"
                                               : "both";
    j["cross_method_tol"] = c.cross_method_tol;
    return j.dump();
}

bool wants(const ScenarioConfig& c, const std::string& artifact) {
    return std::find(c.artifacts.begin(), c.artifacts.end(), artifact) != c.artifacts.end();
}

} // namespace

RunManifest run_scenario(const ScenarioConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();
    const ResolvedScenario rs = resolve(config);
    const PhysicalParams& par = rs.scaled;
    const bool discrete = config.method != Method::analytic;
    const bool analytic = config.method != Method::discrete;

    std::error_code ec;
    fs::create_directories(config.directory, ec);
    if (ec)
        throw ConfigError("directory: cannot create '" + config.directory + "'");
    const fs::path dir(config.directory);

    const BathGrid grid = discretize_bath(par, rs.n_modes, rs.half_span);

    // time axis and atom populations
    Trajectory traj;
    std::vector<double> times;
    double norm_drift = 0.0;
    if (discrete) {
        if (rs.t_end > 0.5 * recurrence_time(grid))
            std::cerr << "warning: t_end " << format_number(rs.t_end)
                      << " exceeds half the bath recurrence time "
                      << format_number(recurrence_time(grid)) << " (Gamma = 1 units)\n";
        traj = integrate(initial_excited_atom(grid), grid, par, rs.t_end, rs.dt,
                         config.sample_every);
        times = traj.times;
        norm_drift = max_norm_drift(traj);
    } else {
        times = (rs.t_end == 0.0) ? std::vector<double>{0.0} : linspace(0.0, rs.t_end, 1001);
    }

    std::vector<double> pop_discrete, pop_analytic;
    if (discrete) {
        pop_discrete.resize(traj.states.size());
        for (std::size_t k = 0; k < traj.states.size(); ++k)
            pop_discrete[k] = std::norm(traj.states[k].atom_amp);
    }
    if (analytic) {
        pop_analytic.resize(times.size());
        for (std::size_t k = 0; k < times.size(); ++k)
            pop_analytic[k] = std::norm(atomic_amplitude_general(times[k], par, 1.0).atom);
    }

    std::optional<double> cross_dev;
    if (discrete && analytic) {
        double dev = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k)
            dev = std::max(dev, std::abs(pop_discrete[k] - pop_analytic[k]));
        cross_dev = dev;
    }

    const std::vector<double>& pop_primary = analytic ? pop_analytic : pop_discrete;

    RunManifest manifest;
    manifest.version = version;
    manifest.config_echo = config_echo_json(rs.input);
    manifest.norm_drift = norm_drift;
    manifest.cross_method_max_dev = cross_dev;

    auto record = [&](const CsvWriter& w, const fs::path& name) {
        manifest.files.push_back({name.string(), w.rows()});
    };

    if (wants(config, "population")) {
        const std::string header = (discrete && analytic)
                                       ? "gamma_t,population_analytic,population_discrete"
                                       : "gamma_t,population";
        CsvWriter w(dir / "population.csv", header);
        for (std::size_t k = 0; k < times.size(); ++k) {
            if (discrete && analytic)
                w.row(std::array{times[k], pop_analytic[k], pop_discrete[k]});
            else
                w.row(std::array{times[k], pop_primary[k]});
        }
        record(w, "population.csv");
    }

    if (wants(config, "concurrence")) {
        CsvWriter w(dir / "concurrence.csv", "gamma_t,population,c2_total,c2_atom,c2_modes");
        for (std::size_t k = 0; k < times.size(); ++k) {
            double c2_atom, c2_modes;
            if (analytic) {
                const Spectrum s = spectrum_at_time(times[k], grid, par);
                const double excitation = spectrum_integral(s);
                c2_atom = 4.0 * pop_analytic[k] * excitation;
                c2_modes = 2.0 * excitation * excitation;
            } else {
                const ConcurrenceSum cs = concurrence_sum(traj.states[k]);
                c2_atom = cs.atom_part;
                c2_modes = cs.mode_part;
            }
            w.row(std::array{times[k], pop_primary[k], c2_atom + c2_modes, c2_atom, c2_modes});
        }
        record(w, "concurrence.csv");
    }

    if (wants(config, "spectrum")) {
        const Spectrum s_end = analytic
                                   ? spectrum_at_time(rs.t_end, grid, par)
                                   : excitation_spectrum_from_state(traj.states.back(), grid);
        const Spectrum s_inf =
            spectrum_longtime(std::span<const double>(grid.frequencies), par);
        CsvWriter w(dir / "spectrum.csv", "delta_over_gamma,s_end,s_infinity");
        for (std::size_t k = 0; k < grid.size(); ++k)
            w.row(std::array{grid.frequencies[k], s_end.values[k], s_inf.values[k]});
        record(w, "spectrum.csv");
    }

    if (wants(config, "e_atom")) {
        const auto t_idx = downsample_indices(times.size(), 400);
        const auto f_idx = downsample_indices(grid.size(), 400);
        std::vector<double> freqs;
        for (std::size_t j : f_idx) freqs.push_back(grid.frequencies[j]);

        CsvWriter w(dir / "e_atom.csv", "gamma_t,delta_over_gamma,value");
        for (std::size_t ti : t_idx) {
            std::vector<double> svals;
            if (analytic) {
                const Spectrum s = spectrum_at_time(times[ti], std::span<const double>(freqs), par);
                svals = s.values;
            } else {
                const Spectrum s = excitation_spectrum_from_state(traj.states[ti], grid);
                for (std::size_t j : f_idx) svals.push_back(s.values[j]);
            }
            const double pop = analytic ? pop_analytic[ti] : pop_discrete[ti];
            for (std::size_t j = 0; j < freqs.size(); ++j)
                w.row(std::array{times[ti], freqs[j], 4.0 * pop * svals[j]});
        }
        record(w, "e_atom.csv");
    }

    auto write_mode_field = [&](const char* filename, const Spectrum& s_full) {
        const auto f_idx = downsample_indices(grid.size(), 400);
        std::vector<double> freqs, svals;
        for (std::size_t j : f_idx) {
            freqs.push_back(s_full.frequencies[j]);
            svals.push_back(s_full.values[j]);
        }
        CsvWriter w(dir / filename, "omega_lambda,omega_mu,value");
        for (std::size_t r = 0; r < freqs.size(); ++r)
            for (std::size_t c = 0; c < freqs.size(); ++c)
                w.row(std::array{freqs[r], freqs[c], 2.0 * svals[r] * svals[c]});
        record(w, filename);
    };

    if (wants(config, "e_modes")) {
        const Spectrum s_end = analytic
                                   ? spectrum_at_time(rs.t_end, grid, par)
                                   : excitation_spectrum_from_state(traj.states.back(), grid);
        write_mode_field("e_modes.csv", s_end);
    }

    if (wants(config, "e_modes_infinity")) {
        const Spectrum s_inf =
            spectrum_longtime(std::span<const double>(grid.frequencies), par);
        write_mode_field("e_modes_infinity.csv", s_inf);
    }

    if (wants(config, "peaks")) {
        const Spectrum s_inf =
            spectrum_longtime(std::span<const double>(grid.frequencies), par);
        const std::vector<SpectralPeak> peaks = sideband_peak_analysis(s_inf, par);
        CsvWriter w(dir / "peaks.csv", "location,height,weight");
        for (const SpectralPeak& pk : peaks)
            w.row(std::array{pk.location, pk.height, pk.weight});
        record(w, "peaks.csv");
    }

    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(manifest, (dir / "run_manifest.json").string());

    if (norm_drift > 1e-6)
        throw NumericalError("norm drift " + format_number(norm_drift) +
                             " exceeds the quality gate 1e-6");
    if (cross_dev && *cross_dev > config.cross_method_tol)
        throw NumericalError("cross-method deviation " + format_number(*cross_dev) +
                             " exceeds the configured tolerance " +
                             format_number(config.cross_method_tol));
    return manifest;
}

// ----------------------------------------------------------------------------
// sweep

namespace {

std::size_t worker_count(std::size_t points) {
    if (const char* env = std::getenv("RESERVOIR_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1)
            return std::min<std::size_t>(static_cast<std::size_t>(v), points);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::min<std::size_t>(std::max(1u, hw), points);
}

} // namespace

std::vector<SweepPoint> run_sweep(const ScenarioConfig& base, const std::string& axis,
                                  const std::vector<double>& values) {
    if (values.empty())
        throw ConfigError("values: list is empty");

    // validate every point before any work starts
    std::vector<ScenarioConfig> configs;
    for (double v : values) {
        ScenarioConfig cfg = apply_axis_value(base, axis, v);
        cfg.directory = (fs::path(base.directory) / (axis + "=" + format_number(v))).string();
        configs.push_back(std::move(cfg));
    }

    std::vector<SweepPoint> points(values.size());
    std::vector<std::exception_ptr> errors(values.size());
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= configs.size()) break;
            try {
                run_scenario(configs[k]);
                const ResolvedScenario rs = resolve(configs[k]);
                const BathGrid grid = discretize_bath(rs.scaled, rs.n_modes, rs.half_span);
                const Spectrum s_inf =
                    spectrum_longtime(std::span<const double>(grid.frequencies), rs.scaled);
                SweepPoint& pt = points[k];
                pt.value = values[k];
                pt.directory = configs[k].directory;
                pt.c2_infinity = total_concurrence(s_inf, 0.0);
                std::vector<SpectralPeak> peaks = sideband_peak_analysis(s_inf, rs.scaled);
                std::sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) {
                    if (a.height != b.height) return a.height > b.height;
                    return a.location < b.location;
                });
                for (const SpectralPeak& pk : peaks) pt.peak_locations.push_back(pk.location);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    const std::size_t workers = worker_count(configs.size());
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w + 1 < workers; ++w) pool.emplace_back(work);
    work();
    for (std::thread& th : pool) th.join();

    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<SweepPoint> ordered = points;
    std::sort(ordered.begin(), ordered.end(),
              [](const SweepPoint& a, const SweepPoint& b) { return a.value < b.value; });

    fs::create_directories(base.directory);
    CsvWriter w(fs::path(base.directory) / "summary.csv",
                "value,c2_infinity,peak_count,peak_location_1,peak_location_2");
    for (const SweepPoint& pt : ordered) {
        std::string line = format_number(pt.value) + "," + format_number(pt.c2_infinity) + "," +
                           std::to_string(pt.peak_locations.size());
        for (std::size_t k = 0; k < 2; ++k)
            line += "," + (k < pt.peak_locations.size() ? format_number(pt.peak_locations[k])
                                                        : std::string());
        w.raw_row(line);
    }
    return ordered;
}

// ----------------------------------------------------------------------------
// figure data

namespace {

PhysicalParams figure_params(double coupling_ratio) {
    PhysicalParams p;
    p.gamma = 1.0;
    p.omega0_coupling = coupling_ratio;
    return validate_params(p);
}

} // namespace

std::vector<ManifestFile> emit_figure_data(const std::string& which,
                                           const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw ConfigError("directory: cannot create '" + out_dir + "'");
    const fs::path dir(out_dir);

    const PhysicalParams strong = figure_params(10.0);
    const PhysicalParams medium = figure_params(1.0);
    const PhysicalParams weak = figure_params(0.1);

    std::vector<ManifestFile> files;

    if (which == "fig1") {
        CsvWriter w(dir / "fig1.csv", "gamma_t,pop_strong,pop_weak");
        for (double t : linspace(0.0, 60.0, 6001)) {
            const double ps = std::norm(atomic_amplitude_resonant(t, strong, 1.0));
            const double pw = std::norm(atomic_amplitude_resonant(t, weak, 1.0));
            w.row(std::array{t, ps, pw});
        }
        files.push_back({(dir / "fig1.csv").string(), w.rows()});
    } else if (which == "fig2") {
        const std::vector<double> f_strong = linspace(-40.0, 40.0, 6401);
        const std::vector<double> f_weak = linspace(-40.0, 40.0, 16001);
        CsvWriter w(dir / "fig2.csv", "gamma_t,c2_strong,c2_weak");
        for (double t : linspace(0.0, 60.0, 1501)) {
            const double ps = std::norm(atomic_amplitude_resonant(t, strong, 1.0));
            const double pw = std::norm(atomic_amplitude_resonant(t, weak, 1.0));
            const Spectrum ss = spectrum_at_time(t, std::span<const double>(f_strong), strong);
            const Spectrum sw = spectrum_at_time(t, std::span<const double>(f_weak), weak);
            w.row(std::array{t, total_concurrence(ss, ps), total_concurrence(sw, pw)});
        }
        files.push_back({(dir / "fig2.csv").string(), w.rows()});
    } else if (which == "fig3") {
        struct Panel {
            const char* name;
            const PhysicalParams* par;
            double t_max, span;
        };
        for (const Panel& panel : {Panel{"fig3a.csv", &strong, 10.0, 15.0},
                                   Panel{"fig3b.csv", &weak, 60.0, 4.5}}) {
            const std::vector<double> freqs = linspace(-panel.span, panel.span, 301);
            CsvWriter w(dir / panel.name, "gamma_t,delta_over_gamma,value");
            for (double t : linspace(0.0, panel.t_max, 201)) {
                const double pop = std::norm(atomic_amplitude_resonant(t, *panel.par, 1.0));
                const Spectrum s =
                    spectrum_at_time(t, std::span<const double>(freqs), *panel.par);
                for (std::size_t k = 0; k < freqs.size(); ++k)
                    w.row(std::array{t, freqs[k], 4.0 * pop * s.values[k]});
            }
            files.push_back({(dir / panel.name).string(), w.rows()});
        }
    } else if (which == "fig4") {
        struct Panel {
            const char* name;
            const PhysicalParams* par;
            double span;
        };
        for (const Panel& panel : {Panel{"fig4a.csv", &strong, 15.0},
                                   Panel{"fig4b.csv", &medium, 4.5},
                                   Panel{"fig4c.csv", &weak, 4.5}}) {
            const std::vector<double> freqs = linspace(-panel.span, panel.span, 301);
            const std::vector<double> field =
                density_mode_mode_infinity(std::span<const double>(freqs), *panel.par);
            CsvWriter w(dir / panel.name, "omega_lambda,omega_mu,value");
            for (std::size_t r = 0; r < freqs.size(); ++r)
                for (std::size_t c = 0; c < freqs.size(); ++c)
                    w.row(std::array{freqs[r], freqs[c], field[r * freqs.size() + c]});
            files.push_back({(dir / panel.name).string(), w.rows()});
        }
    } else {
        throw ConfigError("which: unknown figure id '" + which + "'");
    }

    RunManifest manifest;
    manifest.version = version;
    manifest.config_echo = json{{"figure", which}, {"directory", out_dir}}.dump();
    manifest.files = files;
    write_manifest(manifest, (dir / "run_manifest.json").string());
    return files;
}

} // namespace qbath
