#include "qbath/numerics.hpp"

namespace qbath {

double compensated_sum(std::span<const double> xs) {
    CompensatedSum<double> acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

double trapezoid(std::span<const double> y, double dx) {
    if (y.size() < 2) return 0.0;
    CompensatedSum<double> acc;
    for (std::size_t k = 1; k + 1 < y.size(); ++k) acc.add(y[k]);
    acc.add(0.5 * (y.front() + y.back()));
    return acc.value() * dx;
}

} // namespace qbath
