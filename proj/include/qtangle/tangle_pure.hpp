#pragma once

#include <vector>

#include "qtangle/state.hpp"

namespace qtangle {

// Antisymmetric 2x2 symbol: epsilon(0,1) = 1, epsilon(1,0) = -1, else 0.
constexpr int epsilon(int i, int j) { return (i == j) ? 0 : (i == 0 ? 1 : -1); }

// psi-tilde = sigma_y^{tensor n} conj(psi), with (sigma_y)_{ij} = -i * epsilon(i,j).
// Amplitude x of the result is (-i)^n * (-1)^{weight(x)} * conj(a at complement of x).
StateVector spin_flip(const StateVector& psi);

// C = |<psi|psi-tilde>|, evaluated in O(2^n). Identically zero for odd n;
// the x / complement-of-x terms are summed pairwise so the cancellation is
// exact in floating point, not merely small.
double concurrence_pure(const StateVector& psi);

// tau for even n (as C^2) or n = 3 (residual entanglement). Odd n > 3 has no
// permutation-invariant value and raises UndefinedForOddN.
double n_tangle(const StateVector& psi);

// Residual entanglement of a 3-qubit pure state by direct contraction of the
// six-epsilon sum (2^12 terms).
double three_tangle(const StateVector& psi);

// Literal quartic contraction over all index quadruples, with the
// distinguished epsilon pair placed on `last_pair_qubit` (default n). For
// even n and n = 3 the placement does not matter; for odd n > 3 it does,
// which is exactly what this operation exists to demonstrate. Guarded at
// 4 qubits by default, 6 with allow_large.
double epsilon_contraction_oracle(const StateVector& psi, int last_pair_qubit = 0,
                                  bool allow_large = false);

// Relabels qubits: qubit perm[j-1] of the result is qubit j of the input.
StateVector permute_qubits(const StateVector& psi, const std::vector<int>& perm);

// C^2 of the split {qubit i} vs rest: 4 det of the single-qubit reduction.
double tangle_one_vs_rest(const StateVector& psi, int qubit);

}  // namespace qtangle
