#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qbath/model.hpp"
#include "qbath/numerics.hpp"
#include "qbath/pseudomode.hpp"

using namespace qbath;

namespace {

PhysicalParams resonant(double gamma, double coupling) {
    PhysicalParams p;
    p.gamma = gamma;
    p.omega0_coupling = coupling;
    return validate_params(p);
}

PhysicalParams detuned(double gamma, double coupling, double delta) {
    PhysicalParams p;
    p.gamma = gamma;
    p.omega0_coupling = coupling;
    p.reservoir_center = delta;
    return validate_params(p);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t k = 0; k < n; ++k)
        xs[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    return xs;
}

} // namespace

TEST_CASE("resonant amplitude at t = 0 returns the initial amplitude") {
    const Complex c0{0.3, -0.4};
    CHECK(atomic_amplitude_resonant(0.0, resonant(1.0, 10.0), c0) == c0);
    CHECK(atomic_amplitude_resonant(0.0, resonant(1.0, 0.1), c0) == c0);
}

TEST_CASE("resonant amplitude at critical damping") {
    // Gamma = 4 Omega_0 makes alpha vanish; at Gamma t = 4 the limit gives 2/e
    const PhysicalParams p = resonant(4.0, 1.0);
    const Complex c = atomic_amplitude_resonant(1.0, p, 1.0);
    CHECK(c.real() == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(c.imag() == doctest::Approx(0.0));
}

TEST_CASE("resonant amplitude rejects negative time and nonzero detuning") {
    CHECK_THROWS_AS(atomic_amplitude_resonant(-1.0, resonant(1.0, 1.0), 1.0), ConfigError);
    CHECK_THROWS_AS(atomic_amplitude_resonant(1.0, detuned(1.0, 1.0, 0.5), 1.0), ConfigError);
}

TEST_CASE("strong-coupling population maxima are spaced by 4 pi / |alpha|") {
    const PhysicalParams p = resonant(1.0, 10.0);
    const double dt = 1e-4;
    std::vector<double> maxima_times;
    double prev2 = 1.0, prev1 = 1.0;
    for (double t = dt; t < 5.0; t += dt) {
        const double pop = std::norm(atomic_amplitude_resonant(t, p, 1.0));
        if (prev1 > prev2 && prev1 >= pop)
            maxima_times.push_back(t - dt);
        prev2 = prev1;
        prev1 = pop;
    }
    REQUIRE(maxima_times.size() >= 5);
    const double expected = 4.0 * std::numbers::pi / std::sqrt(16.0 * 100.0 - 1.0);
    for (std::size_t k = 1; k < maxima_times.size(); ++k) {
        const double spacing = maxima_times[k] - maxima_times[k - 1];
        CHECK(spacing == doctest::Approx(expected).epsilon(0.02));
    }
}

TEST_CASE("weak-coupling population decays monotonically") {
    const PhysicalParams p = resonant(1.0, 0.1);
    double prev = 1.0;
    for (double t : linspace(0.0, 10.0, 10001)) {
        if (t == 0.0) continue;
        const double pop = std::norm(atomic_amplitude_resonant(t, p, 1.0));
        CHECK(pop <= prev + 1e-15);
        prev = pop;
    }
    CHECK(std::norm(atomic_amplitude_resonant(5.0, p, 1.0)) < 0.9);
}

TEST_CASE("strong-coupling population maxima decay with the e^{-Gamma t/2} envelope") {
    const PhysicalParams p = resonant(1.0, 10.0);
    const double period = 4.0 * std::numbers::pi / std::sqrt(16.0 * 100.0 - 1.0);
    for (int k = 1; k <= 12; ++k) {
        const double t = static_cast<double>(k) * period;
        const double pop = std::norm(atomic_amplitude_resonant(t, p, 1.0));
        CHECK(pop == doctest::Approx(std::exp(-0.5 * t)).epsilon(0.05));
    }
    // minima approach zero
    const double tmin = 0.5 * period;
    CHECK(std::norm(atomic_amplitude_resonant(tmin, p, 1.0)) < 5e-3);
}

TEST_CASE("pseudomode solution invariants") {
    // the two-exponential decomposition exists away from critical damping
    for (double ratio : {0.05, 0.26, 1.0, 10.0}) {
        const PseudomodeSolution sol = solve_pseudomode(resonant(1.0, ratio));
        CHECK(!sol.degenerate);
        CHECK(std::abs(sol.weight_plus + sol.weight_minus - 1.0) < 1e-14);
        CHECK(sol.rate_plus.real() <= 1e-14);
        CHECK(sol.rate_minus.real() <= 1e-14);
        const Complex balance =
            sol.weight_plus * sol.rate_plus + sol.weight_minus * sol.rate_minus;
        CHECK(std::abs(balance) < 1e-12);
    }
    CHECK(solve_pseudomode(resonant(4.0, 1.0)).degenerate);
}

TEST_CASE("general solution starts at (c_a0, 0) and matches the resonant formula") {
    const Complex c0{0.8, 0.6};
    for (double ratio : {0.1, 0.25, 1.0, 10.0}) {
        const PhysicalParams p = resonant(1.0, ratio);
        const GeneralAmplitudes a0 = atomic_amplitude_general(0.0, p, c0);
        CHECK(std::abs(a0.atom - c0) < 1e-15);
        CHECK(std::abs(a0.pseudomode) < 1e-15);
        for (double t : linspace(0.0, 12.0, 241)) {
            const Complex general = atomic_amplitude_general(t, p, c0).atom;
            const Complex closed = atomic_amplitude_resonant(t, p, c0);
            CHECK(std::abs(general - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
        }
    }
}

TEST_CASE("pseudomode leakage balances the lost atomic population") {
    // |c_a|^2 + |b|^2 + Gamma Int_0^t |b|^2 dt' is conserved
    for (double ratio : {0.1, 1.0, 10.0}) {
        const PhysicalParams p = resonant(1.0, ratio);
        const double t_end = 8.0;
        const std::size_t n = 20001;
        const double dt = t_end / static_cast<double>(n - 1);
        std::vector<double> b2(n);
        for (std::size_t k = 0; k < n; ++k)
            b2[k] = std::norm(atomic_amplitude_general(dt * static_cast<double>(k), p, 1.0)
                                  .pseudomode);
        const double dissipated = p.gamma * trapezoid(b2, dt);
        const GeneralAmplitudes fin = atomic_amplitude_general(t_end, p, 1.0);
        const double budget = std::norm(fin.atom) + std::norm(fin.pseudomode) + dissipated;
        CHECK(budget == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("detuned amplitudes still conserve the leakage budget") {
    const PhysicalParams p = detuned(1.0, 1.0, 2.0);
    const double t_end = 6.0;
    const std::size_t n = 20001;
    const double dt = t_end / static_cast<double>(n - 1);
    std::vector<double> b2(n);
    for (std::size_t k = 0; k < n; ++k)
        b2[k] = std::norm(atomic_amplitude_general(dt * static_cast<double>(k), p, 1.0)
                              .pseudomode);
    const GeneralAmplitudes fin = atomic_amplitude_general(t_end, p, 1.0);
    const double budget = std::norm(fin.atom) + std::norm(fin.pseudomode) +
                          p.gamma * trapezoid(b2, dt);
    CHECK(budget == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("degenerate discriminant routes through the limit formula") {
    // resonance with Gamma = 4 Omega_0: both exponents coincide
    const PhysicalParams p = resonant(4.0, 1.0);
    for (double t : {0.0, 0.3, 1.0, 2.5, 7.0}) {
        const Complex general = atomic_amplitude_general(t, p, 1.0).atom;
        const double quarter = 0.25 * p.gamma * t;
        const double limit = std::exp(-quarter) * (1.0 + quarter);
        CHECK(std::abs(general - limit) < 1e-12);
    }
}

TEST_CASE("mode amplitudes vanish at t = 0") {
    const PhysicalParams p = resonant(1.0, 1.0);
    const BathGrid grid = discretize_bath(p, 101, 10.0);
    for (const Complex& c : mode_amplitudes_analytic(0.0, grid, p, 1.0))
        CHECK(std::abs(c) == 0.0);
}

TEST_CASE("long-time mode amplitudes reproduce the infinity spectrum") {
    // |c_lambda(inf)|^2 = g^2 |sum_± A_±/(s_± + i delta)|^2 falls onto the closed form
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> delta_draw(-25.0, 25.0);
    for (double ratio : {0.1, 1.0, 10.0}) {
        const PhysicalParams p = resonant(1.0, ratio);
        const PseudomodeSolution sol = solve_pseudomode(p);
        std::vector<double> freqs(100);
        for (double& f : freqs) f = delta_draw(rng);
        const Spectrum s_inf = spectrum_infinity(std::span<const double>(freqs), p);
        const double norm = ratio * ratio / (2.0 * std::numbers::pi);
        for (std::size_t k = 0; k < freqs.size(); ++k) {
            const Complex lim =
                sol.weight_plus / (sol.rate_plus + Complex{0.0, freqs[k]}) +
                sol.weight_minus / (sol.rate_minus + Complex{0.0, freqs[k]});
            const double value =
                norm * lorentzian_structure_function(freqs[k], p) * std::norm(lim);
            CHECK(value == doctest::Approx(s_inf.values[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("finite-time spectrum properties") {
    const PhysicalParams p = resonant(1.0, 10.0);
    const BathGrid grid = discretize_bath(p, 4001, 40.0);

    SUBCASE("zero at t = 0") {
        const Spectrum s = spectrum_at_time(0.0, grid, p);
        for (double v : s.values) CHECK(v == 0.0);
    }
    SUBCASE("norm closure: excitation plus population is one") {
        for (double t : {1.0, 5.0, 20.0}) {
            const Spectrum s = spectrum_at_time(t, grid, p);
            const double pop = std::norm(atomic_amplitude_resonant(t, p, 1.0));
            CHECK(spectrum_integral(s) + pop == doctest::Approx(1.0).epsilon(0.01));
        }
    }
    SUBCASE("two dominant sidebands near ±Omega_0 at long times") {
        const Spectrum s = spectrum_at_time(50.0, grid, p);
        double best = 0.0, second = 0.0;
        double best_loc = 0.0, second_loc = 0.0;
        for (std::size_t k = 1; k + 1 < s.values.size(); ++k) {
            if (s.values[k] > s.values[k - 1] && s.values[k] >= s.values[k + 1]) {
                if (s.values[k] > best) {
                    second = best; second_loc = best_loc;
                    best = s.values[k]; best_loc = s.frequencies[k];
                } else if (s.values[k] > second) {
                    second = s.values[k]; second_loc = s.frequencies[k];
                }
            }
        }
        CHECK(std::abs(std::abs(best_loc) - 10.0) < 0.2);
        CHECK(std::abs(std::abs(second_loc) - 10.0) < 0.2);
        CHECK(best_loc * second_loc < 0.0); // opposite sides
    }
    SUBCASE("grid and continuum overloads agree") {
        const Spectrum sg = spectrum_at_time(3.0, grid, p);
        const Spectrum sc =
            spectrum_at_time(3.0, std::span<const double>(grid.frequencies), p);
        for (std::size_t k = 0; k < sg.values.size(); k += 211)
            CHECK(sg.values[k] == doctest::Approx(sc.values[k]).epsilon(1e-12));
    }
}

TEST_CASE("infinity spectrum closed-form values") {
    const double gamma = 1.0;
    for (double ratio : {0.1, 1.0, 10.0}) {
        const PhysicalParams p = resonant(gamma, ratio);
        const std::vector<double> probe{0.0, ratio, -ratio};
        const Spectrum s = spectrum_infinity(std::span<const double>(probe), p);
        CHECK(s.values[0] ==
              doctest::Approx(gamma / (2.0 * std::numbers::pi * ratio * ratio)).epsilon(1e-14));
        CHECK(s.values[1] == doctest::Approx(2.0 / (std::numbers::pi * gamma)).epsilon(1e-14));
        CHECK(s.values[2] == doctest::Approx(2.0 / (std::numbers::pi * gamma)).epsilon(1e-14));
        CHECK(!s.time.has_value());
    }
}

TEST_CASE("infinity spectrum is even in delta and integrates to one") {
    const PhysicalParams p = resonant(1.0, 10.0);
    const std::vector<double> freqs = linspace(-40.0, 40.0, 64001);
    const Spectrum s = spectrum_infinity(std::span<const double>(freqs), p);
    CHECK(spectrum_integral(s) == doctest::Approx(1.0).epsilon(0.005));

    // exact evenness at exactly mirrored frequencies
    std::vector<double> probe;
    for (double x : {0.013, 1.7, 9.99, 10.0, 31.4}) {
        probe.push_back(x);
        probe.push_back(-x);
    }
    const Spectrum sp = spectrum_infinity(std::span<const double>(probe), p);
    for (std::size_t k = 0; k < probe.size(); k += 2)
        CHECK(sp.values[k] == sp.values[k + 1]);
}

TEST_CASE("finite-time spectrum converges pointwise to the infinity spectrum") {
    for (double ratio : {0.1, 10.0}) {
        const PhysicalParams p = resonant(1.0, ratio);
        const double t = 100.0 * std::max(1.0, 1.0 / (ratio * ratio));
        // compare at the analytic peak locations
        std::vector<double> probe;
        if (ratio > 0.354)
            probe = {std::sqrt(ratio * ratio - 0.125), -std::sqrt(ratio * ratio - 0.125)};
        else
            probe = {0.0};
        const Spectrum s_t = spectrum_at_time(t, std::span<const double>(probe), p);
        const Spectrum s_inf = spectrum_infinity(std::span<const double>(probe), p);
        for (std::size_t k = 0; k < probe.size(); ++k)
            CHECK(s_t.values[k] == doctest::Approx(s_inf.values[k]).epsilon(0.01));
    }
}

TEST_CASE("longtime spectrum generalizes the resonant closed form") {
    SUBCASE("equal on resonance") {
        const PhysicalParams p = resonant(1.0, 3.0);
        const std::vector<double> freqs = linspace(-20.0, 20.0, 2001);
        const Spectrum a = spectrum_longtime(std::span<const double>(freqs), p);
        const Spectrum b = spectrum_infinity(std::span<const double>(freqs), p);
        for (std::size_t k = 0; k < freqs.size(); k += 97)
            CHECK(a.values[k] == doctest::Approx(b.values[k]).epsilon(1e-12));
    }
    SUBCASE("detuned limit matches the finite-time spectrum at large t") {
        const PhysicalParams p = detuned(1.0, 1.0, 1.5);
        const std::vector<double> freqs = linspace(-15.0, 15.0, 601);
        const Spectrum lim = spectrum_longtime(std::span<const double>(freqs), p);
        const Spectrum fin = spectrum_at_time(400.0, std::span<const double>(freqs), p);
        for (std::size_t k = 0; k < freqs.size(); k += 31)
            CHECK(fin.values[k] ==
                  doctest::Approx(lim.values[k]).epsilon(1e-6).scale(1e-12));
    }
    SUBCASE("detuned spectrum integrates to one") {
        const PhysicalParams p = detuned(1.0, 1.0, 1.5);
        const std::vector<double> freqs = linspace(-60.0, 60.0, 48001);
        const Spectrum lim = spectrum_longtime(std::span<const double>(freqs), p);
        CHECK(spectrum_integral(lim) == doctest::Approx(1.0).epsilon(0.005));
    }
}
