#include "qbath/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "qbath/numerics.hpp"

namespace qbath {

namespace {

void check_normalized(const SystemState& s) {
    if (std::abs(norm_squared(s) - 1.0) > 1e-8)
        throw ConfigError("state: must be normalized (norm deviation above 1e-8)");
}

// sum over register qubits of |c_j|^2 and |c_j|^4
struct RegisterMoments {
    double sum2{0.0};
    double sum4{0.0};
    double atom2{0.0};
    double bath2{0.0};
    double bath4{0.0};
};

RegisterMoments moments(const SystemState& s) {
    RegisterMoments m;
    m.atom2 = std::norm(s.atom_amp);
    CompensatedSum<double> b2, b4;
    for (const Complex& c : s.mode_amps) {
        const double p = std::norm(c);
        b2.add(p);
        b4.add(p * p);
    }
    m.bath2 = b2.value();
    m.bath4 = b4.value();
    m.sum2 = m.atom2 + m.bath2;
    m.sum4 = m.atom2 * m.atom2 + m.bath4;
    return m;
}

} // namespace

std::size_t register_size(const SystemState& s) {
    return s.mode_amps.size() + 1;
}

Complex site_amplitude(const SystemState& s, std::size_t j) {
    if (j == atom_site) return s.atom_amp;
    if (j > s.mode_amps.size())
        throw ConfigError("site index: out of range");
    return s.mode_amps[j - 1];
}

TwoQubitDM reduced_two_qubit(const SystemState& s, std::size_t j, std::size_t i) {
    if (j == i)
        throw ConfigError("subsystem indices: must be distinct");
    const Complex c0 = s.vacuum_amp;
    const Complex cj = site_amplitude(s, j);
    const Complex ci = site_amplitude(s, i);

    TwoQubitDM rho = TwoQubitDM::Zero();
    rho(0, 0) = 1.0 - std::norm(cj) - std::norm(ci);
    rho(1, 1) = std::norm(ci);
    rho(2, 2) = std::norm(cj);
    rho(0, 1) = c0 * std::conj(ci);
    rho(0, 2) = c0 * std::conj(cj);
    rho(1, 2) = ci * std::conj(cj);
    rho(1, 0) = std::conj(rho(0, 1));
    rho(2, 0) = std::conj(rho(0, 2));
    rho(2, 1) = std::conj(rho(1, 2));
    return rho;
}

OneQubitDM reduced_one_qubit(const SystemState& s, std::size_t j) {
    const Complex c0 = s.vacuum_amp;
    const Complex cj = site_amplitude(s, j);
    OneQubitDM rho;
    rho(0, 0) = 1.0 - std::norm(cj);
    rho(1, 1) = std::norm(cj);
    rho(0, 1) = c0 * std::conj(cj);
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
}

double purity(const OneQubitDM& rho) {
    return std::norm(rho(0, 0)) + std::norm(rho(1, 1)) + 2.0 * std::norm(rho(0, 1));
}

double concurrence_general(const TwoQubitDM& rho) {
    static const TwoQubitDM yy = [] {
        TwoQubitDM m = TwoQubitDM::Zero();
        m(0, 3) = -1.0;
        m(1, 2) = 1.0;
        m(2, 1) = 1.0;
        m(3, 0) = -1.0;
        return m;
    }();

    const TwoQubitDM r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<TwoQubitDM> solver(r, /*computeEigenvectors=*/false);

    std::array<double, 4> lambda{};
    double lmax = 0.0;
    for (int k = 0; k < 4; ++k) {
        lambda[k] = solver.eigenvalues()[k].real();
        lmax = std::max(lmax, lambda[k]);
    }
    // zero out eigenvalues indistinguishable from 0; genuine negatives reject the input
    const double noise_floor = 64.0 * std::numeric_limits<double>::epsilon() * lmax;
    for (double& l : lambda) {
        if (l < -1e-10)
            throw NumericalError("concurrence: density matrix has a negative eigenvalue");
        if (l < noise_floor) l = 0.0;
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());

    const double c = std::sqrt(lambda[0]) - std::sqrt(lambda[1]) - std::sqrt(lambda[2]) -
                     std::sqrt(lambda[3]);
    return std::clamp(c, 0.0, 1.0);
}

double concurrence_closed_form(Complex c_j, Complex c_i) {
    return 4.0 * std::norm(c_j) * std::norm(c_i);
}

double global_entanglement(const SystemState& s) {
    check_normalized(s);
    const RegisterMoments m = moments(s);
    const double n = static_cast<double>(register_size(s));
    // Q = 2 - (2/R) sum_j tr rho_j^2 with tr rho_j^2 = 1 - 2|c_j|^2 (S - |c_j|^2)
    return (4.0 / n) * (m.sum2 * m.sum2 - m.sum4);
}

double global_entanglement_dense(std::span<const Complex> psi, int n_qubits) {
    if (n_qubits < 1)
        throw ConfigError("n_qubits: must be at least 1");
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (psi.size() != dim)
        throw ConfigError("psi: length must be 2^n_qubits");
    {
        CompensatedSum<double> n2;
        for (const Complex& z : psi) n2.add(std::norm(z));
        if (std::abs(n2.value() - 1.0) > 1e-8)
            throw ConfigError("psi: must be normalized (norm deviation above 1e-8)");
    }

    CompensatedSum<double> purity_sum;
    for (int q = 0; q < n_qubits; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        CompensatedSum<double> p00, p11;
        CompensatedSum<Complex> coh;
        for (std::size_t k = 0; k < dim; ++k) {
            if (k & bit) {
                p11.add(std::norm(psi[k]));
            } else {
                p00.add(std::norm(psi[k]));
                coh.add(psi[k] * std::conj(psi[k | bit]));
            }
        }
        purity_sum.add(p00.value() * p00.value() + p11.value() * p11.value() +
                       2.0 * std::norm(coh.value()));
    }
    return 2.0 - (2.0 * purity_sum.value()) / static_cast<double>(n_qubits);
}

ConcurrenceSum concurrence_sum(const SystemState& s) {
    check_normalized(s);
    const RegisterMoments m = moments(s);
    ConcurrenceSum out;
    out.atom_part = 4.0 * m.atom2 * m.bath2;
    out.mode_part = 2.0 * (m.bath2 * m.bath2 - m.bath4);
    out.total = out.atom_part + out.mode_part;
    return out;
}

} // namespace qbath
