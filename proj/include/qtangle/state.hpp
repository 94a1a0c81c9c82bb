#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qtangle/numeric.hpp"

namespace qtangle {

/// Qubit 1 is the most significant bit of the flat basis index, matching
/// left-to-right basis labels |i1 i2 ... in>.
inline int qubit_bit(std::uint64_t index, int n, int qubit) {
    return static_cast<int>((index >> (n - qubit)) & 1u);
}

/// n-qubit pure state: 2^n complex amplitudes, unit norm within 1e-6.
class StateVector {
  public:
    StateVector(int n, ComplexVector amplitudes);

    /// Infers the qubit count from the vector length (must be a power of two).
    static StateVector from_amplitudes(ComplexVector amplitudes);

    /// Rescales to unit norm before constructing.
    static StateVector normalized(int n, ComplexVector amplitudes);

    int num_qubits() const { return n_; }
    Eigen::Index dim() const { return amps_.size(); }
    const ComplexVector& amplitudes() const { return amps_; }
    Complex operator[](Eigen::Index i) const { return amps_[i]; }

    double norm() const { return amps_.norm(); }

  private:
    int n_;
    ComplexVector amps_;
};

/// n-qubit mixed state: Hermitian (1e-10), unit trace (1e-8), PSD (-1e-9).
class DensityMatrix {
  public:
    DensityMatrix(int n, ComplexMatrix matrix);

    static DensityMatrix from_pure(const StateVector& psi);

    int num_qubits() const { return n_; }
    Eigen::Index dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }

  private:
    int n_;
    ComplexMatrix mat_;
};

/// The named constructions: CAT(n), W(n), GHZ = CAT(3),
/// SINGLET_PAIRS(k) = k-fold tensor power of (|01> - |10>)/sqrt(2),
/// and BASIS(bitstring).
struct NamedStateKind {
    enum class Tag { Cat, W, Ghz, SingletPairs, Basis };

    Tag tag;
    int n = 0;          // Cat/W: qubit count; SingletPairs: pair count
    std::string bits;   // Basis only

    static NamedStateKind cat(int n) { return {Tag::Cat, n, {}}; }
    static NamedStateKind w(int n) { return {Tag::W, n, {}}; }
    static NamedStateKind ghz() { return {Tag::Ghz, 3, {}}; }
    static NamedStateKind singlet_pairs(int pairs) { return {Tag::SingletPairs, pairs, {}}; }
    static NamedStateKind basis(std::string bitstring) {
        return {Tag::Basis, static_cast<int>(bitstring.size()), std::move(bitstring)};
    }
};

StateVector make_named_state(const NamedStateKind& kind);

// Convenience wrappers.
StateVector make_cat(int n);
StateVector make_w(int n);
StateVector make_ghz();
StateVector make_singlet_pairs(int pairs);
StateVector make_basis(const std::string& bits);

/// Uniform random pure state (complex Gaussian, normalized), 1 <= n <= 12.
StateVector random_state(int n, std::uint64_t seed);

/// Reduced density matrix over the kept qubits (1-based indices, any order;
/// result qubits are ordered by ascending original index).
DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Kronecker product, a's qubits first (most significant).
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// (I x ... x A x ... x I) applied to raw amplitudes, A on `qubit`. The
/// result is not renormalized; for non-unitary A (POVM elements) the norm
/// carries the branch probability.
ComplexVector apply_one_qubit(const ComplexVector& amps, int n, int qubit,
                              const ComplexMatrix& a);

/// Unitary convenience wrapper around apply_one_qubit.
StateVector apply_one_qubit_unitary(const StateVector& psi, int qubit, const ComplexMatrix& u);

}  // namespace qtangle
