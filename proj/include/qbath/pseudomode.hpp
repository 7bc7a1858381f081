// pseudomode.hpp — exact dynamics via the pseudomode reduction of the Lorentzian bath:
// atom and pseudomode amplitudes, closed-form mode amplitudes, reservoir spectra.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qbath/model.hpp"

namespace qbath {

// Two-exponential decomposition c_a(t)/c_a(0) = A_+ e^{s_+ t} + A_- e^{s_- t}.
// At resonance s_± = (-Gamma ± alpha)/4 and A_± = (1 ± Gamma/alpha)/2 with
// alpha = sqrt(Gamma^2 - 16 Omega_0^2) on the principal branch; one formula covers
// the underdamped, overdamped and critically damped regimes.
struct PseudomodeSolution {
    Complex rate_plus{};    // s_+, Re <= 0
    Complex rate_minus{};   // s_-, Re <= 0
    Complex weight_plus{};  // A_+
    Complex weight_minus{}; // A_-, A_+ + A_- = 1
    Complex alpha{};        // sqrt(Gamma^2 - 16 Omega_0^2), principal branch

    double gamma{0.0};
    double coupling{0.0};
    Complex pole{};      // Delta - i Gamma/2
    Complex split{};     // sqrt(pole^2 + 4 Omega_0^2); rates are -i(pole ± split)/2
    bool degenerate{false};

    // c_a(t) / c_a(0) and b(t) / c_a(0), interaction picture.
    Complex atom_amp(double t) const;
    Complex pseudomode_amp(double t) const;
};

PseudomodeSolution solve_pseudomode(const PhysicalParams& p);

// Eq.-of-motion solution at resonance (Delta = 0):
//   c_a(t) = c_a(0) e^{-Gamma t/4} (cosh(alpha t/4) + (Gamma/alpha) sinh(alpha t/4)),
// with the |alpha| -> 0 limit e^{-Gamma t/4}(1 + Gamma t/4).
Complex atomic_amplitude_resonant(double t, const PhysicalParams& p, Complex c_a0);

struct GeneralAmplitudes {
    Complex atom;       // \tilde c_a(t)
    Complex pseudomode; // \tilde b(t)
};

// Exact solution of i d/dt (c_a, b) = [[0, Omega_0], [Omega_0, Delta - i Gamma/2]] (c_a, b)
// with b(0) = 0; reduces to atomic_amplitude_resonant when Delta = 0.
GeneralAmplitudes atomic_amplitude_general(double t, const PhysicalParams& p, Complex c_a0);

// Closed-form mode amplitudes for c_lambda(0) = 0:
//   c_lambda(t) = -i g_lambda c_a(0) sum_± A_± (e^{(s_± + i delta)t} - 1)/(s_± + i delta).
std::vector<Complex> mode_amplitudes_analytic(double t, const BathGrid& grid,
                                              const PhysicalParams& p, Complex c_a0);

// Spectrum of reservoir excitation S(omega, t) = rho(omega) |c_omega(t)|^2.
struct Spectrum {
    std::vector<double> frequencies;
    std::vector<double> values;  // >= 0
    std::optional<double> time;  // nullopt marks the t -> infinity limit
};

// S at a finite time from the analytic mode amplitudes (initial state c_a(0) = 1, c_0 = 0).
// The continuum overload evaluates S(omega, t) = Omega_0^2 D(omega)/(2 pi) |shape|^2
// at arbitrary frequencies; the grid overload samples the same function on the bath grid.
Spectrum spectrum_at_time(double t, const BathGrid& grid, const PhysicalParams& p);
Spectrum spectrum_at_time(double t, std::span<const double> frequencies,
                          const PhysicalParams& p);

// Long-time limit at resonance (initial state c_a(0) = 1, c_0 = 0):
//   S(omega, inf) = Omega_0^2 (Gamma/2) / { pi [ (delta^2 - Omega_0^2)^2 + (Gamma/2)^2 delta^2 ] }.
Spectrum spectrum_infinity(const BathGrid& grid, const PhysicalParams& p);
Spectrum spectrum_infinity(std::span<const double> frequencies, const PhysicalParams& p);

// Long-time limit of the general (possibly detuned) solution; equals
// spectrum_infinity when Delta = 0.
Spectrum spectrum_longtime(std::span<const double> frequencies, const PhysicalParams& p);

// Total bath excitation: trapezoid integral of S over its grid.
double spectrum_integral(const Spectrum& s);

} // namespace qbath
