#include "qbath/pseudomode.hpp"

#include <cmath>
#include <numbers>

#include "qbath/numerics.hpp"

namespace qbath {

namespace {

constexpr Complex imag_unit{0.0, 1.0};

Complex sinc_c(Complex z) {
    if (z == Complex{0.0, 0.0}) return {1.0, 0.0};
    return std::sin(z) / z;
}

// int_0^t t' e^{z t'} dt' = t^2 f2(z t) with f2(w) = (e^w (w - 1) + 1)/w^2.
Complex ramp_integral(Complex z, double t) {
    const Complex w = z * t;
    const double aw = std::abs(w);
    if (aw < 0.5) {
        // f2 = sum_k w^k / (k! (k+2))
        Complex term{0.5, 0.0};
        Complex acc = term;
        for (int k = 1; k <= 24; ++k) {
            term *= w * (static_cast<double>(k) + 1.0) /
                    (static_cast<double>(k) * (static_cast<double>(k) + 2.0));
            acc += term;
            if (std::abs(term) < 1e-20 * std::abs(acc)) break;
        }
        return t * t * acc;
    }
    return t * t * (std::exp(w) * (w - 1.0) + 1.0) / (w * w);
}

double scale_of(const PhysicalParams& p) {
    return std::max({p.gamma, p.omega0_coupling, std::abs(p.detuning)});
}

} // namespace

PseudomodeSolution solve_pseudomode(const PhysicalParams& p) {
    PseudomodeSolution sol;
    sol.gamma = p.gamma;
    sol.coupling = p.omega0_coupling;
    sol.pole = Complex{p.detuning, -0.5 * p.gamma};
    sol.alpha = std::sqrt(Complex{p.gamma * p.gamma -
                                  16.0 * p.omega0_coupling * p.omega0_coupling,
                                  0.0});
    const Complex d = sol.pole;
    sol.split = std::sqrt(d * d + 4.0 * p.omega0_coupling * p.omega0_coupling);
    sol.degenerate = std::abs(sol.split) < 1e-12 * scale_of(p);

    // exponents s_± = -i mu_± with mu_± = (d ± split)/2
    sol.rate_plus = -imag_unit * 0.5 * (d + sol.split);
    sol.rate_minus = -imag_unit * 0.5 * (d - sol.split);
    if (sol.degenerate) {
        sol.weight_plus = Complex{0.5, 0.0};
        sol.weight_minus = Complex{0.5, 0.0};
    } else {
        sol.weight_plus = 0.5 * (sol.split - d) / sol.split;
        sol.weight_minus = 0.5 * (sol.split + d) / sol.split;
    }
    return sol;
}

Complex PseudomodeSolution::atom_amp(double t) const {
    const Complex d = pole;
    const Complex w = 0.5 * split * t;
    if (std::abs(w) <= 1.0) {
        // c_a = e^{-i d t/2} [cos(w) + i (d t/2) sinc(w)]; exact at split = 0
        const Complex envelope = std::exp(-imag_unit * 0.5 * d * t);
        return envelope * (std::cos(w) + imag_unit * 0.5 * d * t * sinc_c(w));
    }
    return weight_plus * std::exp(rate_plus * t) + weight_minus * std::exp(rate_minus * t);
}

Complex PseudomodeSolution::pseudomode_amp(double t) const {
    const Complex w = 0.5 * split * t;
    if (std::abs(w) <= 1.0) {
        const Complex envelope = std::exp(-imag_unit * 0.5 * pole * t);
        return -imag_unit * coupling * t * envelope * sinc_c(w);
    }
    return coupling * (std::exp(rate_plus * t) - std::exp(rate_minus * t)) / split;
}

Complex atomic_amplitude_resonant(double t, const PhysicalParams& p, Complex c_a0) {
    if (t < 0.0)
        throw ConfigError("t: must be non-negative");
    if (p.detuning != 0.0)
        throw ConfigError("detuning: atomic_amplitude_resonant requires Delta = 0");

    const Complex alpha = std::sqrt(Complex{
        p.gamma * p.gamma - 16.0 * p.omega0_coupling * p.omega0_coupling, 0.0});
    const double quarter = 0.25 * p.gamma * t;
    if (std::abs(alpha) < 1e-8 * p.gamma)
        return c_a0 * std::exp(-quarter) * (1.0 + quarter);

    const Complex w = 0.25 * alpha * t;
    if (std::abs(w) <= 350.0) {
        // Eq. of motion solution e^{-G t/4}(cosh(a t/4) + (G t/4) sinhc(a t/4));
        // cosh of an imaginary argument turns into cos in the underdamped regime.
        Complex sinhc = (w == Complex{0.0, 0.0}) ? Complex{1.0, 0.0} : std::sinh(w) / w;
        return c_a0 * std::exp(-quarter) * (std::cosh(w) + quarter * sinhc);
    }
    // far overdamped tail: evaluate each decaying exponential separately
    const Complex a_plus = 0.5 * (1.0 + p.gamma / alpha);
    const Complex a_minus = 0.5 * (1.0 - p.gamma / alpha);
    const Complex s_plus = 0.25 * (-p.gamma + alpha);
    const Complex s_minus = 0.25 * (-p.gamma - alpha);
    return c_a0 * (a_plus * std::exp(s_plus * t) + a_minus * std::exp(s_minus * t));
}

GeneralAmplitudes atomic_amplitude_general(double t, const PhysicalParams& p, Complex c_a0) {
    if (t < 0.0)
        throw ConfigError("t: must be non-negative");
    const PseudomodeSolution sol = solve_pseudomode(p);
    return {c_a0 * sol.atom_amp(t), c_a0 * sol.pseudomode_amp(t)};
}

namespace {

// |c_omega(t)|^2 / g^2: the squared integral shape shared by mode amplitudes and spectra.
// Returns the complex integral I(delta, t) = int_0^t e^{i delta t'} c_a(t')/c_a(0) dt'.
struct ShapeEvaluator {
    PseudomodeSolution sol;
    double t;
    bool degenerate;
    Complex exp_plus;  // e^{s_+ t}
    Complex exp_minus; // e^{s_- t}
    Complex root;      // -i d / 2 (double root, degenerate branch)
    Complex exp_root;  // e^{root t}

    ShapeEvaluator(const PhysicalParams& p, double time)
        : sol(solve_pseudomode(p)), t(time) {
        degenerate = std::abs(sol.split) * t < 1e-4;
        exp_plus = std::exp(sol.rate_plus * t);
        exp_minus = std::exp(sol.rate_minus * t);
        root = -imag_unit * 0.5 * sol.pole;
        exp_root = std::exp(root * t);
    }

    // robust (e^{zt} - 1)/z given a precomputed e^{zt}
    Complex integral_from(Complex z, Complex ezt) const {
        const Complex w = z * t;
        if (std::abs(w) < 1e-3) {
            return t * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0))));
        }
        return (ezt - 1.0) / z;
    }

    Complex operator()(double delta) const {
        const Complex phase = std::polar(1.0, delta * t);
        if (degenerate) {
            // c_a(t') = e^{root t'}(1 + i d t'/2)
            const Complex q = root + imag_unit * delta;
            const Complex eqt = exp_root * phase;
            Complex value = integral_from(q, eqt);
            value += imag_unit * 0.5 * sol.pole *
                     ((std::abs(q * t) < 0.5) ? ramp_integral(q, t)
                                              : (t * eqt - integral_from(q, eqt)) / q);
            return value;
        }
        const Complex z_plus = sol.rate_plus + imag_unit * delta;
        const Complex z_minus = sol.rate_minus + imag_unit * delta;
        return sol.weight_plus * integral_from(z_plus, exp_plus * phase) +
               sol.weight_minus * integral_from(z_minus, exp_minus * phase);
    }
};

} // namespace

std::vector<Complex> mode_amplitudes_analytic(double t, const BathGrid& grid,
                                              const PhysicalParams& p, Complex c_a0) {
    if (t < 0.0)
        throw ConfigError("t: must be non-negative");
    const ShapeEvaluator shape(p, t);
    std::vector<Complex> amps(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double delta = grid.frequencies[k] - p.atom_frequency;
        amps[k] = -imag_unit * grid.couplings[k] * c_a0 * shape(delta);
    }
    return amps;
}

Spectrum spectrum_at_time(double t, std::span<const double> frequencies,
                          const PhysicalParams& p) {
    if (t < 0.0)
        throw ConfigError("t: must be non-negative");
    const ShapeEvaluator shape(p, t);
    const double norm = p.omega0_coupling * p.omega0_coupling / (2.0 * std::numbers::pi);
    Spectrum s;
    s.time = t;
    s.frequencies.assign(frequencies.begin(), frequencies.end());
    s.values.resize(frequencies.size());
    for (std::size_t k = 0; k < frequencies.size(); ++k) {
        const double delta = frequencies[k] - p.atom_frequency;
        s.values[k] = norm * lorentzian_structure_function(frequencies[k], p) *
                      std::norm(shape(delta));
    }
    return s;
}

Spectrum spectrum_at_time(double t, const BathGrid& grid, const PhysicalParams& p) {
    return spectrum_at_time(t, std::span<const double>(grid.frequencies), p);
}

Spectrum spectrum_infinity(std::span<const double> frequencies, const PhysicalParams& p) {
    const double o2 = p.omega0_coupling * p.omega0_coupling;
    const double hw = 0.5 * p.gamma;
    Spectrum s;
    s.time = std::nullopt;
    s.frequencies.assign(frequencies.begin(), frequencies.end());
    s.values.resize(frequencies.size());
    for (std::size_t k = 0; k < frequencies.size(); ++k) {
        const double delta = frequencies[k] - p.atom_frequency;
        const double d2 = delta * delta;
        const double res = d2 - o2;
        s.values[k] = o2 * hw / (std::numbers::pi * (res * res + hw * hw * d2));
    }
    return s;
}

Spectrum spectrum_infinity(const BathGrid& grid, const PhysicalParams& p) {
    return spectrum_infinity(std::span<const double>(grid.frequencies), p);
}

Spectrum spectrum_longtime(std::span<const double> frequencies, const PhysicalParams& p) {
    const PseudomodeSolution sol = solve_pseudomode(p);
    const double norm = p.omega0_coupling * p.omega0_coupling / (2.0 * std::numbers::pi);
    Spectrum s;
    s.time = std::nullopt;
    s.frequencies.assign(frequencies.begin(), frequencies.end());
    s.values.resize(frequencies.size());
    for (std::size_t k = 0; k < frequencies.size(); ++k) {
        const double delta = frequencies[k] - p.atom_frequency;
        // t -> inf of the phase integrals: -1/(s_± + i delta)
        Complex limit;
        if (sol.degenerate) {
            const Complex q = -imag_unit * 0.5 * sol.pole + imag_unit * delta;
            limit = -1.0 / q + imag_unit * 0.5 * sol.pole / (q * q);
        } else {
            limit = -sol.weight_plus / (sol.rate_plus + imag_unit * delta) -
                    sol.weight_minus / (sol.rate_minus + imag_unit * delta);
        }
        s.values[k] =
            norm * lorentzian_structure_function(frequencies[k], p) * std::norm(limit);
    }
    return s;
}

double spectrum_integral(const Spectrum& s) {
    if (s.frequencies.size() < 2) return 0.0;
    const double dx = s.frequencies[1] - s.frequencies[0];
    return trapezoid(s.values, dx);
}

} // namespace qbath
