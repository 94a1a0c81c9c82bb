#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qtangle/numeric.hpp"
#include "qtangle/state.hpp"

namespace qtangle {

// Descending square roots of the eigenvalues of rho * rho-tilde, clamped at 0.
struct LambdaSpectrum {
    RealVector lambdas;
};

struct EnsembleMember {
    double p;
    StateVector psi;
};

// Pure-state decomposition of a density matrix: rho = sum_i p_i |psi_i><psi_i|.
struct Ensemble {
    std::vector<EnsembleMember> members;
};

struct TauMinResult {
    enum class Method { Analytic, ConvexRoof };
    double value = 0.0;
    Method method = Method::Analytic;
    std::optional<Ensemble> witness;
};

// rho-tilde = sigma_y^{tensor n} conj(rho) sigma_y^{tensor n}; elementwise
// (-1)^{w(x)+w(y)} conj(rho at complemented indices).
DensityMatrix spin_flip_density(const DensityMatrix& rho);

// Spectrum of rho * rho-tilde, computed as the singular values of
// V^T M V for a Gram factor rho = V V* and the spin-flip matrix M
// (same nonzero eigenvalues, no square root of a noisy matrix).
LambdaSpectrum lambda_spectrum(const DensityMatrix& rho);

// [max{0, lambda_1 - sum of the rest}]^2. Even n only; the formula is not
// established for odd n, use convex_roof_minimize there.
TauMinResult tau_min_analytic(const DensityMatrix& rho);

// Wootters' two-qubit concurrence max{0, l1 - l2 - l3 - l4}.
double concurrence_mixed_2q(const DensityMatrix& rho);

struct ConvexRoofConfig {
    int ensemble_size = 0;  // 0: auto, restarts cycle sizes rank..min(2*rank, rank^2)
    int restarts = 20;
    int max_sweeps = 500;
    double tol = 1e-10;
    std::uint64_t seed = 0;
};

using PureTangleFn = std::function<double(const StateVector&)>;

// Minimizes sum_i p_i f(psi_i) over pure-state decompositions of rho.
// Ensembles of size m are parameterized by m x m unitaries mixing the
// weighted eigenvectors of rho (every size-m decomposition arises this
// way), searched by random restarts plus coordinate descent over pairwise
// rotations; in auto mode the restarts cycle over ensemble sizes. Restart 0
// starts from the eigen-ensemble itself, so the result never exceeds that
// bound.
TauMinResult convex_roof_minimize(const DensityMatrix& rho, const PureTangleFn& functional,
                                  const ConvexRoofConfig& cfg = {});

// Residual of C^2_{1(23)} = tau^min_12 + tau^min_13 + tau_123 on a 3-qubit
// pure state, with the mixed terms as squared Wootters concurrences.
struct CkwReport {
    double lhs = 0.0;
    double tau_min_12 = 0.0;
    double tau_min_13 = 0.0;
    double three_tangle = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};
CkwReport check_ckw(const StateVector& psi);

// Residual of sum_j C^2_{1j} = C^2_{1(2...n)} on the n-qubit W state.
struct WeqReport {
    int n = 0;
    std::vector<double> pair_concurrences;  // C_{1j}, j = 2..n
    double pairwise_sum = 0.0;
    double one_vs_rest = 0.0;
    double residual = 0.0;
};
WeqReport check_w_equality(int n);

}  // namespace qtangle
