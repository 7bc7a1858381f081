#include "qbath/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "qbath/numerics.hpp"

namespace qbath {

namespace {

constexpr Complex imag_unit{0.0, 1.0};

double max_abs_detuning(const BathGrid& grid, const PhysicalParams& p) {
    double m = 0.0;
    for (double f : grid.frequencies) m = std::max(m, std::abs(f - p.atom_frequency));
    return m;
}

double stability_scale(const PhysicalParams& p, const BathGrid& grid) {
    return std::min({1.0 / p.omega0_coupling, 1.0 / p.gamma,
                     1.0 / std::max(max_abs_detuning(grid, p), 1e-300)});
}

void check_state(const SystemState& s, const BathGrid& grid) {
    if (s.mode_amps.size() != grid.size())
        throw ConfigError("state: mode amplitude count does not match the bath grid");
}

} // namespace

double norm_squared(const SystemState& s) {
    CompensatedSum<double> acc;
    acc.add(std::norm(s.vacuum_amp));
    acc.add(std::norm(s.atom_amp));
    for (const Complex& c : s.mode_amps) acc.add(std::norm(c));
    return acc.value();
}

SystemState initial_excited_atom(const BathGrid& grid) {
    SystemState s;
    s.mode_amps.assign(grid.size(), Complex{0.0, 0.0});
    return s;
}

namespace {

// Derivative with externally supplied phases u_k = e^{i delta_k t}.
void derivative_with_phases(const Complex& atom_amp, const std::vector<Complex>& mode_amps,
                            const BathGrid& grid, const std::vector<Complex>& phases,
                            StateDerivative& out) {
    CompensatedSum<Complex> acc;
    const std::size_t n = grid.size();
    for (std::size_t k = 0; k < n; ++k) {
        acc.add(grid.couplings[k] * std::conj(phases[k]) * mode_amps[k]);
        out.modes[k] = -imag_unit * grid.couplings[k] * phases[k] * atom_amp;
    }
    out.atom = -imag_unit * acc.value();
}

} // namespace

void derivative(const SystemState& s, const BathGrid& grid, const PhysicalParams& p,
                double t, StateDerivative& out) {
    check_state(s, grid);
    out.modes.resize(grid.size());
    std::vector<Complex> phases(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        phases[k] = std::polar(1.0, (grid.frequencies[k] - p.atom_frequency) * t);
    derivative_with_phases(s.atom_amp, s.mode_amps, grid, phases, out);
}

StateDerivative derivative(const SystemState& s, const BathGrid& grid,
                           const PhysicalParams& p, double t) {
    StateDerivative out;
    derivative(s, grid, p, t, out);
    return out;
}

double default_timestep(const PhysicalParams& p, const BathGrid& grid) {
    return 0.01 * stability_scale(p, grid);
}

double recurrence_time(const BathGrid& grid) {
    return 2.0 * std::numbers::pi / grid.spacing;
}

Trajectory integrate(const SystemState& initial, const BathGrid& grid,
                     const PhysicalParams& p, double t_end, double dt,
                     std::size_t sample_every) {
    check_state(initial, grid);
    if (t_end < 0.0)
        throw ConfigError("t_end: must be non-negative");
    if (dt < 0.0)
        throw ConfigError("dt: must be positive");
    {
        const double n2 = norm_squared(initial);
        if (std::abs(n2 - 1.0) > 1e-10)
            throw ConfigError("state: initial norm must be 1 within 1e-10");
    }
    if (dt == 0.0) dt = default_timestep(p, grid);
    if (dt > 0.1 * stability_scale(p, grid))
        throw ConfigError("dt: exceeds the stability bound "
                          "0.1*min(1/Omega_0, 1/Gamma, 1/max|delta|)");

    Trajectory traj;
    if (t_end == 0.0) {
        traj.times.push_back(0.0);
        traj.states.push_back(initial);
        return traj;
    }

    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
    dt = t_end / static_cast<double>(n_steps);
    if (sample_every == 0)
        sample_every = std::max<std::size_t>(1, (n_steps + 1999) / 2000);

    const std::size_t n = grid.size();
    std::vector<double> delta(n);
    for (std::size_t k = 0; k < n; ++k)
        delta[k] = grid.frequencies[k] - p.atom_frequency;

    // running phases e^{i delta t}, advanced by half-step increments and
    // refreshed exactly every so often to cap multiplicative drift
    std::vector<Complex> phase(n), inc_half(n), ph_half(n), ph_full(n);
    for (std::size_t k = 0; k < n; ++k) {
        phase[k] = Complex{1.0, 0.0};
        inc_half[k] = std::polar(1.0, 0.5 * delta[k] * dt);
    }
    constexpr std::size_t refresh_interval = 4096;

    Complex atom = initial.atom_amp;
    std::vector<Complex> modes = initial.mode_amps;

    StateDerivative k1, k2, k3, k4;
    k1.modes.resize(n); k2.modes.resize(n); k3.modes.resize(n); k4.modes.resize(n);
    std::vector<Complex> tmp_modes(n);
    Complex tmp_atom;

    auto snapshot = [&](double t) {
        SystemState s;
        s.time = t;
        s.vacuum_amp = initial.vacuum_amp;
        s.atom_amp = atom;
        s.mode_amps = modes;
        traj.times.push_back(t);
        traj.states.push_back(std::move(s));
    };

    snapshot(0.0);
    for (std::size_t step = 0; step < n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        if (step % refresh_interval == 0)
            for (std::size_t k = 0; k < n; ++k) phase[k] = std::polar(1.0, delta[k] * t);
        for (std::size_t k = 0; k < n; ++k) {
            ph_half[k] = phase[k] * inc_half[k];
            ph_full[k] = ph_half[k] * inc_half[k];
        }

        derivative_with_phases(atom, modes, grid, phase, k1);

        tmp_atom = atom + 0.5 * dt * k1.atom;
        for (std::size_t k = 0; k < n; ++k) tmp_modes[k] = modes[k] + 0.5 * dt * k1.modes[k];
        derivative_with_phases(tmp_atom, tmp_modes, grid, ph_half, k2);

        tmp_atom = atom + 0.5 * dt * k2.atom;
        for (std::size_t k = 0; k < n; ++k) tmp_modes[k] = modes[k] + 0.5 * dt * k2.modes[k];
        derivative_with_phases(tmp_atom, tmp_modes, grid, ph_half, k3);

        tmp_atom = atom + dt * k3.atom;
        for (std::size_t k = 0; k < n; ++k) tmp_modes[k] = modes[k] + dt * k3.modes[k];
        derivative_with_phases(tmp_atom, tmp_modes, grid, ph_full, k4);

        const double w = dt / 6.0;
        atom += w * (k1.atom + 2.0 * k2.atom + 2.0 * k3.atom + k4.atom);
        for (std::size_t k = 0; k < n; ++k) {
            modes[k] += w * (k1.modes[k] + 2.0 * k2.modes[k] + 2.0 * k3.modes[k] + k4.modes[k]);
            phase[k] = ph_full[k];
        }

        const std::size_t done = step + 1;
        if (done == n_steps || done % sample_every == 0)
            snapshot(static_cast<double>(done) * dt);
    }
    return traj;
}

double max_norm_drift(const Trajectory& traj) {
    double drift = 0.0;
    for (const SystemState& s : traj.states)
        drift = std::max(drift, std::abs(std::sqrt(norm_squared(s)) - 1.0));
    return drift;
}

Complex schrodinger_atom_amp(const SystemState& s, const PhysicalParams& p) {
    return std::polar(1.0, -p.atom_frequency * s.time) * s.atom_amp;
}

Complex schrodinger_mode_amp(const SystemState& s, const BathGrid& grid,
                             const PhysicalParams& p, std::size_t mode) {
    (void)p;
    return std::polar(1.0, -grid.frequencies[mode] * s.time) * s.mode_amps[mode];
}

} // namespace qbath
