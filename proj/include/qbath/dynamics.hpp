// dynamics.hpp — interaction-picture Schrödinger dynamics for atom + N discrete bath modes

#pragma once

#include <cstddef>
#include <vector>

#include "qbath/model.hpp"

namespace qbath {

// Single-excitation amplitudes at a time t (interaction picture).
struct SystemState {
    double time{0.0};
    Complex vacuum_amp{0.0, 0.0}; // c_0, constant under the dynamics
    Complex atom_amp{1.0, 0.0};   // \tilde c_a
    std::vector<Complex> mode_amps; // \tilde c_lambda, one per grid mode
};

// |c_0|^2 + |c_a|^2 + sum |c_lambda|^2, compensated.
double norm_squared(const SystemState& s);

// c_a(0) = 1, empty bath, c_0 = 0.
SystemState initial_excited_atom(const BathGrid& grid);

struct StateDerivative {
    Complex atom{0.0, 0.0};
    std::vector<Complex> modes;
};

// Equations of motion with delta_lambda = omega_lambda - omega_0:
//   d c_a/dt      = -i sum_lambda g_lambda e^{-i delta_lambda t} c_lambda
//   d c_lambda/dt = -i g_lambda e^{+i delta_lambda t} c_a
// The vacuum amplitude has zero derivative.
void derivative(const SystemState& s, const BathGrid& grid, const PhysicalParams& p,
                double t, StateDerivative& out);
StateDerivative derivative(const SystemState& s, const BathGrid& grid,
                           const PhysicalParams& p, double t);

struct Trajectory {
    std::vector<double> times;
    std::vector<SystemState> states;
};

// 0.01 * min(1/Omega_0, 1/Gamma, 1/max|delta_lambda|).
double default_timestep(const PhysicalParams& p, const BathGrid& grid);

// Finite grids recur at about 2*pi / spacing; results past half of that are suspect.
double recurrence_time(const BathGrid& grid);

// Fixed-step classical RK4. dt <= 0 selects the default step; the step actually used
// is t_end / ceil(t_end / dt) so that the grid lands on t_end exactly.
// sample_every == 0 keeps at most ~2000 snapshots. dt above the stability bound
// 0.1 * min(1/Omega_0, 1/Gamma, 1/max|delta|) is rejected.
Trajectory integrate(const SystemState& initial, const BathGrid& grid,
                     const PhysicalParams& p, double t_end, double dt = 0.0,
                     std::size_t sample_every = 0);

// max over snapshots of |norm - 1|.
double max_norm_drift(const Trajectory& traj);

// Schrödinger-picture amplitudes, recovered from the interaction picture on demand.
Complex schrodinger_atom_amp(const SystemState& s, const PhysicalParams& p);
Complex schrodinger_mode_amp(const SystemState& s, const BathGrid& grid,
                             const PhysicalParams& p, std::size_t mode);

} // namespace qbath
