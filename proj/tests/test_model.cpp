#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qbath/model.hpp"
#include "qbath/numerics.hpp"

using namespace qbath;

namespace {

PhysicalParams make_params(double gamma, double coupling, double omega0 = 0.0,
                           double center = 0.0) {
    PhysicalParams p;
    p.gamma = gamma;
    p.omega0_coupling = coupling;
    p.atom_frequency = omega0;
    p.reservoir_center = center;
    return validate_params(p);
}

// independent quadrature of D over [center - span, center + span]
double structure_function_integral(const PhysicalParams& p, double span, std::size_t n) {
    const double dx = 2.0 * span / static_cast<double>(n - 1);
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = p.reservoir_center - span + dx * static_cast<double>(k);
        y[k] = lorentzian_structure_function(w, p);
    }
    return trapezoid(y, dx);
}

} // namespace

TEST_CASE("lorentzian structure function values") {
    const PhysicalParams p = make_params(2.0, 1.0, 100.0, 100.0);
    CHECK(lorentzian_structure_function(p.reservoir_center, p) == doctest::Approx(4.0 / p.gamma));
    CHECK(lorentzian_structure_function(p.reservoir_center + 0.5 * p.gamma, p) ==
          doctest::Approx(2.0 / p.gamma));
    CHECK(lorentzian_structure_function(p.reservoir_center - 0.5 * p.gamma, p) ==
          doctest::Approx(2.0 / p.gamma));
}

TEST_CASE("lorentzian is symmetric about the reservoir center") {
    // offsets chosen so that center ± x is exactly representable
    const PhysicalParams p = make_params(0.7, 1.0, 3.0, 3.5);
    for (double x : {0.25, 0.5, 2.0, 16.0, 256.0}) {
        CHECK(lorentzian_structure_function(p.reservoir_center + x, p) ==
              lorentzian_structure_function(p.reservoir_center - x, p));
    }
    const PhysicalParams centered = make_params(0.7, 1.0, 0.0, 0.0);
    for (double x : {0.01, 0.3, 1.7, 12.0, 250.0}) {
        CHECK(lorentzian_structure_function(x, centered) ==
              lorentzian_structure_function(-x, centered));
    }
}

TEST_CASE("structure function integrates to 2 pi over a ±200 Gamma window") {
    for (double gamma : {0.5, 1.0, 7.0}) {
        const PhysicalParams p = make_params(gamma, 1.0, 0.0, gamma * 1.5);
        const double integral = structure_function_integral(p, 200.0 * gamma, 400001);
        CHECK(integral == doctest::Approx(2.0 * std::numbers::pi).epsilon(0.005));
    }
}

TEST_CASE("validate_params") {
    SUBCASE("valid resonant") {
        const PhysicalParams p = make_params(1.0, 10.0, 100.0, 100.0);
        CHECK(p.detuning == 0.0);
    }
    SUBCASE("valid detuned") {
        const PhysicalParams p = make_params(1.0, 0.1, 0.0, 0.5);
        CHECK(p.detuning == 0.5);
    }
    SUBCASE("gamma must be positive") {
        PhysicalParams p;
        p.gamma = 0.0;
        CHECK_THROWS_WITH_AS(validate_params(p), "gamma must be positive", ConfigError);
    }
    SUBCASE("coupling must be positive") {
        PhysicalParams p;
        p.omega0_coupling = -1.0;
        CHECK_THROWS_AS(validate_params(p), ConfigError);
    }
    SUBCASE("non-finite rejected") {
        PhysicalParams p;
        p.reservoir_center = std::nan("");
        CHECK_THROWS_AS(validate_params(p), ConfigError);
    }
}

TEST_CASE("two-mode bath is constructed directly") {
    const PhysicalParams p = make_params(1.0, 2.0, 0.0, 5.0);
    const BathGrid grid = discretize_bath(p, 2, p.gamma);
    REQUIRE(grid.size() == 2);
    CHECK(grid.frequencies[0] == doctest::Approx(p.reservoir_center - p.gamma));
    CHECK(grid.frequencies[1] == doctest::Approx(p.reservoir_center + p.gamma));
    CHECK(grid.spacing == doctest::Approx(2.0 * p.gamma));
    CHECK(grid.mode_density == doctest::Approx(0.5 / p.gamma));
    const double expected = p.omega0_coupling *
        std::sqrt(lorentzian_structure_function(p.reservoir_center + p.gamma, p) *
                  2.0 * p.gamma / (2.0 * std::numbers::pi));
    CHECK(grid.couplings[0] == doctest::Approx(expected));
    CHECK(grid.couplings[1] == doctest::Approx(expected));
}

TEST_CASE("bath grid invariants") {
    const PhysicalParams p = make_params(1.0, 1.0, 50.0, 50.0);
    const BathGrid grid = discretize_bath(p, 2001, 40.0);

    SUBCASE("uniform spacing") {
        for (std::size_t k = 1; k < grid.size(); ++k) {
            const double step = grid.frequencies[k] - grid.frequencies[k - 1];
            CHECK(std::abs(step - grid.spacing) < 1e-12 * grid.spacing);
        }
    }
    SUBCASE("midpoint is the reservoir center") {
        const double mid = 0.5 * (grid.frequencies.front() + grid.frequencies.back());
        CHECK(mid == doctest::Approx(p.reservoir_center).epsilon(1e-14));
    }
    SUBCASE("couplings satisfy the structure-function relation pointwise") {
        for (std::size_t k = 0; k < grid.size(); k += 97) {
            const double lhs = grid.mode_density * grid.couplings[k] * grid.couplings[k];
            const double rhs = p.omega0_coupling * p.omega0_coupling *
                               lorentzian_structure_function(grid.frequencies[k], p) /
                               (2.0 * std::numbers::pi);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
    SUBCASE("coupling sum captures the overall coupling strength") {
        CompensatedSum<double> acc;
        for (double g : grid.couplings) acc.add(g * g);
        const double o2 = p.omega0_coupling * p.omega0_coupling;
        CHECK(acc.value() >= 0.98 * o2);
        CHECK(acc.value() <= 1.00 * o2);
    }
}

TEST_CASE("coupling sum converges to the windowed continuum value as the grid refines") {
    const PhysicalParams p = make_params(1.0, 3.0, 0.0, 0.0);
    const double span = 40.0;
    // exact integral of Omega^2 D / (2 pi) over the window
    const double target = p.omega0_coupling * p.omega0_coupling *
                          (2.0 / std::numbers::pi) * std::atan(2.0 * span / p.gamma);
    double previous_error = 1e300;
    for (std::size_t n : {501u, 1001u, 2001u, 4001u}) {
        const BathGrid grid = discretize_bath(p, n, span);
        CompensatedSum<double> acc;
        for (double g : grid.couplings) acc.add(g * g);
        const double error = std::abs(acc.value() - target);
        CHECK(error < previous_error + 1e-12);
        previous_error = error;
    }
    CHECK(previous_error < 1e-4 * p.omega0_coupling * p.omega0_coupling);
}

TEST_CASE("discretize_bath rejects bad configuration") {
    const PhysicalParams p = make_params(1.0, 1.0);
    CHECK_THROWS_AS(discretize_bath(p, 1, 1.0), ConfigError);
    CHECK_THROWS_AS(discretize_bath(p, 100, 0.0), ConfigError);
    CHECK_THROWS_AS(discretize_bath(p, 100, -3.0), ConfigError);
}

TEST_CASE("default half span covers wings and sidebands") {
    CHECK(default_half_span(make_params(1.0, 1.0)) == doctest::Approx(40.0));
    CHECK(default_half_span(make_params(1.0, 20.0)) == doctest::Approx(80.0));
}
