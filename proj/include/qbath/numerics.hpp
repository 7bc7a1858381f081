// numerics.hpp — compensated summation and trapezoid quadrature on uniform grids

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>

namespace qbath {

// Compensated accumulator (Neumaier for real, classic Kahan for complex);
// deterministic for a fixed visit order.
template <typename T>
struct CompensatedSum {
    T sum{};
    T comp{};

    void add(T x) {
        if constexpr (std::is_floating_point_v<T>) {
            T t = sum + x;
            if (std::abs(sum) >= std::abs(x))
                comp += (sum - t) + x;
            else
                comp += (x - t) + sum;
            sum = t;
        } else {
            T y = x - comp;
            T t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    T value() const {
        if constexpr (std::is_floating_point_v<T>)
            return sum + comp;
        else
            return sum;
    }
};

double compensated_sum(std::span<const double> xs);

// Trapezoid rule with uniform spacing dx.
double trapezoid(std::span<const double> y, double dx);

} // namespace qbath
