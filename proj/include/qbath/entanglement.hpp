// entanglement.hpp — reduced density matrices, two-qubit concurrence, global entanglement

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>

#include "qbath/dynamics.hpp"

namespace qbath {

// Basis order |0_j 0_i>, |0_j 1_i>, |1_j 0_i>, |1_j 1_i>.
using TwoQubitDM = Eigen::Matrix4cd;
// Basis order |0_j>, |1_j>.
using OneQubitDM = Eigen::Matrix2cd;

// Subsystem indices: 0 is the atom, 1..N are the bath modes.
inline constexpr std::size_t atom_site = 0;

std::size_t register_size(const SystemState& s);             // N + 1 qubits
Complex site_amplitude(const SystemState& s, std::size_t j); // c_j

// Partial trace of |psi><psi| onto qubits (j, i); the doubly-excited row and
// column vanish in the single-excitation sector.
TwoQubitDM reduced_two_qubit(const SystemState& s, std::size_t j, std::size_t i);

// [[1 - |c_j|^2, c_0 c_j^*], [c_0^* c_j, |c_j|^2]].
OneQubitDM reduced_one_qubit(const SystemState& s, std::size_t j);

double purity(const OneQubitDM& rho);

// Wootters concurrence c(rho) = max{0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)}
// from the eigenvalues of R = rho (sy ox sy) rho^* (sy ox sy) in decreasing order.
// Eigenvalues below -1e-10 reject the input; numerical noise around zero is clamped.
double concurrence_general(const TwoQubitDM& rho);

// Squared concurrence of the single-excitation reduced matrix: 4 |c_j|^2 |c_i|^2.
double concurrence_closed_form(Complex c_j, Complex c_i);

// Q = 2 - (2/R) sum_j tr rho_j^2 over the R = N + 1 register qubits,
// evaluated through the single-excitation purity formula.
double global_entanglement(const SystemState& s);

// Same measure for an arbitrary pure state on n_qubits qubits (psi has 2^n entries).
double global_entanglement_dense(std::span<const Complex> psi, int n_qubits);

struct ConcurrenceSum {
    double total{0.0};
    double atom_part{0.0}; // sum_lambda 4 |c_a|^2 |c_lambda|^2
    double mode_part{0.0}; // sum_{lambda<mu} 4 |c_lambda|^2 |c_mu|^2
};

// C^2(t) and its atom-mode / mode-mode split; Q = 2 total / (N+1).
ConcurrenceSum concurrence_sum(const SystemState& s);

} // namespace qbath
