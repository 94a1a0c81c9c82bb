#include "qtangle/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qtangle/errors.hpp"

namespace qtangle {
namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdTol = 1e-10;

void require_square(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw NotSquare("matrix is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected square");
    }
}

void require_hermitian(const ComplexMatrix& m) {
    require_square(m);
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kHermitianTol) {
        throw NotHermitian("Hermitian deviation " + std::to_string(dev) +
                           " exceeds 1e-10");
    }
}

// First component with magnitude above threshold made real positive.
void phase_fix_column(Eigen::Ref<ComplexVector> v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > 1e-12) {
            v *= std::conj(v[i]) / mag;
            return;
        }
    }
}

}  // namespace

Spectrum eig_hermitian(const ComplexMatrix& m, bool want_vectors) {
    require_hermitian(m);
    const Eigen::Index dim = m.rows();

    // Symmetrize away the sub-tolerance asymmetry before solving.
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        sym, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigensolver failed to converge");
    }

    RealVector vals = solver.eigenvalues();
    ComplexMatrix vecs;
    if (want_vectors) {
        vecs = solver.eigenvectors();
        for (Eigen::Index c = 0; c < vecs.cols(); ++c) phase_fix_column(vecs.col(c));
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (vals[a] != vals[b]) return vals[a] > vals[b];
        if (!want_vectors) return false;
        // Degenerate pair: order by the first differing phase-fixed component.
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double ra = vecs(i, a).real(), rb = vecs(i, b).real();
            if (ra != rb) return ra > rb;
            const double ia = vecs(i, a).imag(), ib = vecs(i, b).imag();
            if (ia != ib) return ia > ib;
        }
        return false;
    });

    Spectrum out;
    out.eigenvalues.resize(dim);
    if (want_vectors) out.eigenvectors.resize(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        out.eigenvalues[k] = vals[order[static_cast<std::size_t>(k)]];
        if (want_vectors)
            out.eigenvectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
    }
    return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
    Spectrum spec = eig_hermitian(m, true);
    if (spec.eigenvalues.minCoeff() < -kPsdTol) {
        throw NotPSD("eigenvalue " + std::to_string(spec.eigenvalues.minCoeff()) +
                     " below -1e-10");
    }
    RealVector roots = spec.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    ComplexMatrix r = spec.eigenvectors * roots.asDiagonal() *
                      spec.eigenvectors.adjoint();
    return 0.5 * (r + ComplexMatrix(r.adjoint()));
}

ComplexVector gaussian_vector(Eigen::Index dim, CounterRng& rng) {
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v[i] = Complex(re, im);
    }
    return v;
}

ComplexMatrix haar_unitary(int dim, CounterRng& rng) {
    if (dim < 1) throw RangeError("unitary dimension must be >= 1");
    ComplexMatrix g(dim, dim);
    for (int j = 0; j < dim; ++j) g.col(j) = gaussian_vector(dim, rng);

    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix& r = qr.matrixQR();
    for (int j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
    }
    return q;
}

ComplexMatrix haar_unitary(int dim, std::uint64_t seed) {
    CounterRng rng(seed);
    return haar_unitary(dim, rng);
}

}  // namespace qtangle
