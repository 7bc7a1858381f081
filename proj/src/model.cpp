#include "qbath/model.hpp"

#include <cmath>
#include <numbers>

namespace qbath {

PhysicalParams validate_params(PhysicalParams p) {
    if (!std::isfinite(p.gamma) || !std::isfinite(p.omega0_coupling) ||
        !std::isfinite(p.atom_frequency) || !std::isfinite(p.reservoir_center))
        throw ConfigError("params: all fields must be finite");
    if (p.gamma <= 0.0)
        throw ConfigError("gamma must be positive");
    if (p.omega0_coupling <= 0.0)
        throw ConfigError("omega0_coupling must be positive");
    p.detuning = p.reservoir_center - p.atom_frequency;
    return p;
}

double lorentzian_structure_function(double omega, const PhysicalParams& p) {
    const double d = omega - p.reservoir_center;
    const double hw = 0.5 * p.gamma;
    return p.gamma / (d * d + hw * hw);
}

BathGrid discretize_bath(const PhysicalParams& p, std::size_t n_modes, double half_span) {
    if (n_modes < 2)
        throw ConfigError("n_modes: must be at least 2");
    if (!(half_span > 0.0) || !std::isfinite(half_span))
        throw ConfigError("half_span: must be positive and finite");

    BathGrid grid;
    grid.spacing = 2.0 * half_span / static_cast<double>(n_modes - 1);
    grid.mode_density = 1.0 / grid.spacing;
    grid.frequencies.resize(n_modes);
    grid.couplings.resize(n_modes);

    for (std::size_t k = 0; k < n_modes; ++k) {
        // symmetric construction so the midpoint lands on omega_c exactly
        const double offset =
            (static_cast<double>(k) - 0.5 * static_cast<double>(n_modes - 1)) * grid.spacing;
        grid.frequencies[k] = p.reservoir_center + offset;
    }

    const double norm = grid.spacing / (2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double d = lorentzian_structure_function(grid.frequencies[k], p);
        grid.couplings[k] = p.omega0_coupling * std::sqrt(d * norm);
    }
    return grid;
}

double default_half_span(const PhysicalParams& p) {
    return std::max(40.0 * p.gamma, 4.0 * p.omega0_coupling);
}

} // namespace qbath
