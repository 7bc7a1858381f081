// model.hpp — Physical parameters, Lorentzian structure function, bath discretization

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qbath {

using Complex = std::complex<double>;

// Invalid configuration or precondition violation; the CLI maps this to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical-quality failure (norm drift, invalid density matrix); CLI exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PhysicalParams {
    double gamma{1.0};            // reservoir width Gamma (> 0)
    double omega0_coupling{1.0};  // overall coupling Omega_0 (> 0)
    double atom_frequency{0.0};   // omega_0
    double reservoir_center{0.0}; // omega_c
    double detuning{0.0};         // Delta = omega_c - omega_0
};

// Checks positivity/finiteness and renormalizes detuning = reservoir_center - atom_frequency.
PhysicalParams validate_params(PhysicalParams p);

// D(omega) = Gamma / ((omega - omega_c)^2 + (Gamma/2)^2); integrates to 2*pi.
double lorentzian_structure_function(double omega, const PhysicalParams& p);

// Discretized reservoir on a uniform frequency grid.
// Couplings satisfy rho * g^2 = Omega_0^2 * D(omega) / (2 pi) pointwise, rho = 1/spacing.
struct BathGrid {
    std::vector<double> frequencies; // strictly increasing, constant spacing
    std::vector<double> couplings;   // g_lambda >= 0
    double spacing{0.0};             // Delta omega
    double mode_density{0.0};        // 1 / spacing
    std::size_t size() const { return frequencies.size(); }
};

// Uniform grid on [omega_c - half_span, omega_c + half_span], n_modes >= 2 points.
BathGrid discretize_bath(const PhysicalParams& p, std::size_t n_modes, double half_span);

// max(40*Gamma, 4*Omega_0): covers the Lorentzian wings and the Rabi sidebands.
double default_half_span(const PhysicalParams& p);

} // namespace qbath
