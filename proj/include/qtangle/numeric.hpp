#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qtangle/rng.hpp"

namespace qtangle {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// `eigenvectors` has one phase-fixed column per eigenvalue, or zero
/// columns when vectors were not requested.
struct Spectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    bool has_vectors() const { return eigenvectors.cols() > 0; }
};

/// Diagonalize a Hermitian matrix (tolerance 1e-10 elementwise on
/// |M_ij - conj(M_ji)|). Eigenvalues are returned in descending order;
/// exact ties are broken by comparing the phase-fixed eigenvectors, so
/// the output is deterministic.
Spectrum eig_hermitian(const ComplexMatrix& m, bool want_vectors = false);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to zero; anything below that is NotPSD.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

/// Haar-distributed unitary: complex Ginibre sample, QR, then the R
/// diagonal's phases folded into Q so the distribution is exactly Haar.
ComplexMatrix haar_unitary(int dim, CounterRng& rng);
ComplexMatrix haar_unitary(int dim, std::uint64_t seed);

/// dim i.i.d. standard complex Gaussian entries (unnormalized).
ComplexVector gaussian_vector(Eigen::Index dim, CounterRng& rng);

}  // namespace qtangle
