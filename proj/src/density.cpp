#include "qbath/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qbath/numerics.hpp"

namespace qbath {

Spectrum excitation_spectrum_from_state(const SystemState& s, const BathGrid& grid) {
    if (s.mode_amps.size() != grid.size())
        throw ConfigError("state: mode amplitude count does not match the bath grid");
    Spectrum out;
    out.time = s.time;
    out.frequencies = grid.frequencies;
    out.values.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        out.values[k] = std::norm(s.mode_amps[k]) * grid.mode_density;
    return out;
}

std::vector<double> density_atom_mode(const Spectrum& s, double atom_population) {
    std::vector<double> field(s.values.size());
    for (std::size_t k = 0; k < field.size(); ++k)
        field[k] = 4.0 * atom_population * s.values[k];
    return field;
}

std::vector<double> density_mode_mode(const Spectrum& s) {
    const std::size_t n = s.values.size();
    std::vector<double> field(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            field[r * n + c] = 2.0 * s.values[r] * s.values[c];
    return field;
}

std::vector<double> density_mode_mode_infinity(std::span<const double> frequencies,
                                               const PhysicalParams& p) {
    const Spectrum s = spectrum_infinity(frequencies, p);
    return density_mode_mode(s);
}

DensityFields build_density_fields(const Spectrum& s, double atom_population) {
    DensityFields f;
    f.frequencies = s.frequencies;
    f.time = s.time;
    f.atom_population = atom_population;
    f.e_atom = density_atom_mode(s, atom_population);
    f.e_modes = density_mode_mode(s);
    return f;
}

double total_concurrence(const Spectrum& s, double atom_population) {
    const double total_excitation = spectrum_integral(s);
    // Int E_A = 4 P Int S; Int Int E_R = 2 (Int S)^2 by separability of Eq. 36
    return 4.0 * atom_population * total_excitation +
           2.0 * total_excitation * total_excitation;
}

double total_concurrence(const DensityFields& f) {
    const std::size_t n = f.frequencies.size();
    if (n < 2) return 0.0;
    const double dx = f.frequencies[1] - f.frequencies[0];

    const double atom_term = trapezoid(f.e_atom, dx);

    // 2-D trapezoid: weight 1/2 on boundary rows/columns
    CompensatedSum<double> acc;
    for (std::size_t r = 0; r < n; ++r) {
        const double wr = (r == 0 || r == n - 1) ? 0.5 : 1.0;
        CompensatedSum<double> row;
        for (std::size_t c = 0; c < n; ++c) {
            const double wc = (c == 0 || c == n - 1) ? 0.5 : 1.0;
            row.add(wc * f.e_modes[r * n + c]);
        }
        acc.add(wr * row.value());
    }
    return atom_term + acc.value() * dx * dx;
}

std::vector<SpectralPeak> sideband_peak_analysis(const Spectrum& s,
                                                 const PhysicalParams& p) {
    const std::size_t n = s.values.size();
    if (n < 3)
        throw ConfigError("spectrum: too few samples for peak analysis");
    const double dx = s.frequencies[1] - s.frequencies[0];
    if (dx >= 0.25 * p.gamma)
        throw ConfigError("spectrum: grid too coarse for peak analysis "
                          "(spacing must be below Gamma/4)");

    const double global_max = *std::max_element(s.values.begin(), s.values.end());
    const double floor = 0.01 * global_max;

    std::vector<SpectralPeak> peaks;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        // plateau ties resolve toward the lower frequency index
        if (!(s.values[k] > s.values[k - 1] && s.values[k] >= s.values[k + 1]))
            continue;
        if (s.values[k] < floor) continue;

        SpectralPeak peak;
        peak.location = s.frequencies[k];
        peak.height = s.values[k];

        const double lo = peak.location - p.gamma;
        const double hi = peak.location + p.gamma;
        std::size_t first = k, last = k;
        while (first > 0 && s.frequencies[first - 1] >= lo) --first;
        while (last + 1 < n && s.frequencies[last + 1] <= hi) ++last;
        if (last > first) {
            std::span<const double> window(s.values.data() + first, last - first + 1);
            peak.weight = trapezoid(window, dx);
        } else {
            peak.weight = s.values[k] * dx;
        }
        peaks.push_back(peak);
    }
    return peaks;
}

std::vector<GridPeak2D> local_maxima_2d(std::span<const double> field,
                                        std::span<const double> frequencies,
                                        double threshold_fraction) {
    const std::size_t n = frequencies.size();
    if (field.size() != n * n)
        throw ConfigError("field: size must be frequencies^2");

    const double global_max = *std::max_element(field.begin(), field.end());
    const double floor = threshold_fraction * global_max;
    auto at = [&](std::size_t r, std::size_t c) { return field[r * n + c]; };

    std::vector<GridPeak2D> peaks;
    for (std::size_t r = 1; r + 1 < n; ++r) {
        for (std::size_t c = 1; c + 1 < n; ++c) {
            const double v = at(r, c);
            if (v < floor) continue;
            // strict against earlier neighbors, >= against later ones
            bool is_max = v > at(r - 1, c - 1) && v > at(r - 1, c) && v > at(r - 1, c + 1) &&
                          v > at(r, c - 1) && v >= at(r, c + 1) && v >= at(r + 1, c - 1) &&
                          v >= at(r + 1, c) && v >= at(r + 1, c + 1);
            if (!is_max) continue;
            peaks.push_back({r, c, frequencies[r], frequencies[c], v});
        }
    }
    return peaks;
}

} // namespace qbath
