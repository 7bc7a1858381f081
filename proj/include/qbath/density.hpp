// density.hpp — entanglement density fields E_A(omega, t), E_R(omega, omega', t)
// and their quadrature to the total concurrence C^2(t).

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qbath/dynamics.hpp"
#include "qbath/pseudomode.hpp"

namespace qbath {

struct DensityFields {
    std::vector<double> frequencies;
    std::vector<double> e_atom;  // E_A(omega_lambda, t), per frequency
    std::vector<double> e_modes; // E_R(omega_lambda, omega_mu, t), row-major n*n, per frequency^2
    std::optional<double> time;  // nullopt marks t -> infinity
    double atom_population{0.0};

    std::size_t size() const { return frequencies.size(); }
    double e_modes_at(std::size_t row, std::size_t col) const {
        return e_modes[row * frequencies.size() + col];
    }
};

// S(omega_lambda, t) = |c_lambda|^2 / spacing, from a discrete trajectory state.
Spectrum excitation_spectrum_from_state(const SystemState& s, const BathGrid& grid);

// E_A = 4 |c_a|^2 S(omega, t), pointwise.
std::vector<double> density_atom_mode(const Spectrum& s, double atom_population);

// E_R = 2 S(omega_lambda) S(omega_mu), full outer product including the diagonal.
std::vector<double> density_mode_mode(const Spectrum& s);

// Closed form for t -> infinity at resonance:
//   Omega_0^4 Gamma^2 / { 2 pi^2 [(d_l^2-O^2)^2+(G/2)^2 d_l^2][(d_m^2-O^2)^2+(G/2)^2 d_m^2] }.
std::vector<double> density_mode_mode_infinity(std::span<const double> frequencies,
                                               const PhysicalParams& p);

DensityFields build_density_fields(const Spectrum& s, double atom_population);

// C^2 = Int E_A domega + Int Int E_R domega domega'.
// The separable overload uses 4 P Int S + 2 (Int S)^2 without materializing E_R.
double total_concurrence(const Spectrum& s, double atom_population);
double total_concurrence(const DensityFields& f);

struct SpectralPeak {
    double location{0.0}; // frequency of the maximum
    double height{0.0};
    double weight{0.0};   // trapezoid integral over a ±Gamma window
};

// Local maxima above 1% of the global maximum; plateau ties resolve toward the
// lower frequency index. Requires spacing < Gamma/4.
std::vector<SpectralPeak> sideband_peak_analysis(const Spectrum& s, const PhysicalParams& p);

struct GridPeak2D {
    std::size_t row{0}, col{0};
    double location_row{0.0}, location_col{0.0};
    double value{0.0};
};

// Strict interior local maxima of a square field above threshold_fraction of its maximum.
std::vector<GridPeak2D> local_maxima_2d(std::span<const double> field,
                                        std::span<const double> frequencies,
                                        double threshold_fraction = 0.01);

} // namespace qbath
