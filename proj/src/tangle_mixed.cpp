#include "qtangle/tangle_mixed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qtangle/errors.hpp"
#include "qtangle/rng.hpp"
#include "qtangle/tangle_pure.hpp"

namespace qtangle {
namespace {

constexpr double kRankTol = 1e-12;
constexpr double kMemberDropTol = 1e-12;
constexpr double kWeightTol = 1e-13;

int weight(std::uint64_t x) { return std::popcount(x); }

// Mixing the pair (u, v) by [[c, s e^{i phi}], [-s e^{-i phi}, c]] preserves
// u u* + v v*, hence the reconstructed density matrix.
struct PairRotation {
    double c, s;
    Complex phase;
};

void apply_rotation(ComplexVector& u, ComplexVector& v, const PairRotation& g) {
    const ComplexVector nu = g.c * u + g.s * g.phase * v;
    const ComplexVector nv = -g.s * std::conj(g.phase) * u + g.c * v;
    u = nu;
    v = nv;
}

// p * f(psi) for the subnormalized member phi-hat; 0 weight contributes 0.
double member_objective(const ComplexVector& phi_hat, int n, const PureTangleFn& f) {
    const double p = phi_hat.squaredNorm();
    if (p <= kMemberDropTol) return 0.0;
    return p * f(StateVector(n, phi_hat / std::sqrt(p)));
}

struct SweepResult {
    double objective;
    bool stationary;
};

double pair_objective_after(const ComplexVector& u, const ComplexVector& v, int n,
                            const PureTangleFn& f, const PairRotation& g) {
    ComplexVector nu = g.c * u + g.s * g.phase * v;
    ComplexVector nv = -g.s * std::conj(g.phase) * u + g.c * v;
    return member_objective(nu, n, f) + member_objective(nv, n, f);
}

}  // namespace

DensityMatrix spin_flip_density(const DensityMatrix& rho) {
    const Eigen::Index dim = rho.dim();
    const std::uint64_t mask = static_cast<std::uint64_t>(dim) - 1;
    const auto& m = rho.matrix();
    ComplexMatrix out(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        for (Eigen::Index y = 0; y < dim; ++y) {
            const int w = weight(static_cast<std::uint64_t>(x)) +
                          weight(static_cast<std::uint64_t>(y));
            const double sign = (w % 2 == 0) ? 1.0 : -1.0;
            out(x, y) = sign * std::conj(m(static_cast<Eigen::Index>(x ^ mask),
                                           static_cast<Eigen::Index>(y ^ mask)));
        }
    }
    return DensityMatrix(rho.num_qubits(), std::move(out));
}

LambdaSpectrum lambda_spectrum(const DensityMatrix& rho) {
    // With rho = V V* (columns sqrt(mu_j) v_j) and M the spin-flip matrix,
    // the sought values are the singular values of A = V^T M V.  Unlike the
    // sqrt(rho)-similarity route this never takes a square root of a noisy
    // eigenvalue, so rank-deficient inputs get exact zeros in the tail
    // instead of sqrt(eps) junk.
    const int n = rho.num_qubits();
    const Eigen::Index dim = rho.dim();
    const std::uint64_t mask = static_cast<std::uint64_t>(dim) - 1;
    const Spectrum spec = eig_hermitian(rho.matrix(), true);

    Eigen::Index r = 0;
    while (r < dim && spec.eigenvalues[r] > kWeightTol) ++r;

    Complex front;
    switch (n % 4) {  // (-i)^n; a global phase, kept for fidelity with spin_flip
        case 0: front = Complex(1.0, 0.0); break;
        case 1: front = Complex(0.0, -1.0); break;
        case 2: front = Complex(-1.0, 0.0); break;
        default: front = Complex(0.0, 1.0); break;
    }

    ComplexMatrix v(dim, r), mv(dim, r);
    for (Eigen::Index j = 0; j < r; ++j) {
        v.col(j) = std::sqrt(spec.eigenvalues[j]) * spec.eigenvectors.col(j);
        for (Eigen::Index x = 0; x < dim; ++x) {
            const double sign = weight(static_cast<std::uint64_t>(x)) % 2 == 0 ? 1.0 : -1.0;
            mv(x, j) = front * sign * v(static_cast<Eigen::Index>(x ^ mask), j);
        }
    }
    const ComplexMatrix a = v.transpose() * mv;
    const Eigen::JacobiSVD<ComplexMatrix> svd(a);

    RealVector lambdas = RealVector::Zero(dim);
    lambdas.head(r) = svd.singularValues();
    return LambdaSpectrum{std::move(lambdas)};
}

TauMinResult tau_min_analytic(const DensityMatrix& rho) {
    if (rho.num_qubits() % 2 != 0) {
        throw OddNUnsupported("analytic tau-min covers even qubit counts only; "
                              "use convex_roof_minimize for n = " +
                              std::to_string(rho.num_qubits()));
    }
    const RealVector l = lambda_spectrum(rho).lambdas;
    const double diff = l[0] - (l.sum() - l[0]);
    const double base = std::max(0.0, diff);
    TauMinResult result;
    result.value = base * base;
    result.method = TauMinResult::Method::Analytic;
    return result;
}

double concurrence_mixed_2q(const DensityMatrix& rho) {
    if (rho.num_qubits() != 2) {
        throw WrongQubitCount("Wootters concurrence needs 2 qubits, got " +
                              std::to_string(rho.num_qubits()));
    }
    const RealVector l = lambda_spectrum(rho).lambdas;
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

TauMinResult convex_roof_minimize(const DensityMatrix& rho, const PureTangleFn& functional,
                                  const ConvexRoofConfig& cfg) {
    const int n = rho.num_qubits();
    if (n > 4) {
        throw DimensionTooLarge("convex-roof search is limited to 4 qubits, got " +
                                std::to_string(n));
    }
    const Spectrum spec = eig_hermitian(rho.matrix(), true);

    int rank = 0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (spec.eigenvalues[i] > kRankTol) ++rank;
    }
    if (rank == 0) throw NotPSD("density matrix has no positive eigenvalues");

    // Auto mode cycles the ensemble size over rank..2*rank across restarts:
    // small ensembles descend crisply when the optimum needs only rank
    // members, larger ones add freedom for optima that need more.
    const int m_cap = std::clamp(cfg.ensemble_size > 0 ? cfg.ensemble_size : 2 * rank, rank,
                                 rank * rank);
    const int m_span = cfg.ensemble_size > 0 ? 1 : m_cap - rank + 1;

    // Weighted eigenvectors e_j = sqrt(mu_j) v_j; rho = sum_j e_j e_j*.
    std::vector<ComplexVector> basis;
    basis.reserve(static_cast<std::size_t>(rank));
    for (int j = 0; j < rank; ++j) {
        basis.push_back(std::sqrt(spec.eigenvalues[j]) * spec.eigenvectors.col(j));
    }

    const auto total_objective = [&](const std::vector<ComplexVector>& members) {
        double sum = 0.0;
        for (const auto& phi : members) sum += member_objective(phi, n, functional);
        return sum;
    };

    const double pi = std::numbers::pi;
    double best_value = 0.0;
    std::vector<ComplexVector> best_members;
    bool have_best = false;
    bool any_stationary = false;

    CounterRng rng(CounterRng::substream(cfg.seed, 0x636f6e766578ull));

    for (int restart = 0; restart < std::max(1, cfg.restarts); ++restart) {
        // Restart 0 is the eigen-ensemble itself; later restarts start from
        // Haar mixings at the restart's ensemble size.
        const int m = cfg.ensemble_size > 0 ? m_cap : rank + restart % m_span;
        std::vector<ComplexVector> members(static_cast<std::size_t>(m),
                                           ComplexVector::Zero(rho.dim()));
        if (restart == 0) {
            for (int j = 0; j < rank; ++j) members[static_cast<std::size_t>(j)] = basis[static_cast<std::size_t>(j)];
        } else {
            const ComplexMatrix u = haar_unitary(m, rng);
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j < rank; ++j) {
                    members[static_cast<std::size_t>(i)] += u(i, j) * basis[static_cast<std::size_t>(j)];
                }
            }
        }

        double current = total_objective(members);
        bool stationary = (m == 1);
        for (int sweep = 0; sweep < cfg.max_sweeps && m > 1; ++sweep) {
            double sweep_gain = 0.0;
            for (int i = 0; i < m; ++i) {
                for (int j = i + 1; j < m; ++j) {
                    ComplexVector& u = members[static_cast<std::size_t>(i)];
                    ComplexVector& v = members[static_cast<std::size_t>(j)];
                    const double base = member_objective(u, n, functional) +
                                        member_objective(v, n, functional);

                    // Coarse grid over the rotation, then local refinement.
                    double best_pair = base;
                    PairRotation best_g{1.0, 0.0, Complex(1.0, 0.0)};
                    bool improved = false;
                    double th_lo = 0.0, th_hi = pi / 2.0;
                    double ph_lo = 0.0, ph_hi = 2.0 * pi;
                    int th_steps = 9, ph_steps = 12;
                    for (int round = 0; round < 8; ++round) {
                        double found_th = -1.0, found_ph = 0.0;
                        for (int a = 0; a < th_steps; ++a) {
                            const double th = th_lo + (th_hi - th_lo) * a /
                                                         std::max(1, th_steps - 1);
                            for (int b = 0; b < ph_steps; ++b) {
                                const double ph = ph_lo + (ph_hi - ph_lo) * b / ph_steps;
                                const PairRotation g{std::cos(th), std::sin(th),
                                                     std::polar(1.0, ph)};
                                const double val = pair_objective_after(u, v, n, functional, g);
                                if (val < best_pair - 1e-15) {
                                    best_pair = val;
                                    best_g = g;
                                    found_th = th;
                                    found_ph = ph;
                                    improved = true;
                                }
                            }
                        }
                        if (found_th < 0.0) break;
                        const double th_span = (th_hi - th_lo) / 4.0;
                        const double ph_span = (ph_hi - ph_lo) / 4.0;
                        th_lo = std::max(0.0, found_th - th_span / 2.0);
                        th_hi = std::min(pi / 2.0, found_th + th_span / 2.0);
                        ph_lo = found_ph - ph_span / 2.0;
                        ph_hi = found_ph + ph_span / 2.0;
                        th_steps = 5;
                        ph_steps = 5;
                    }
                    if (improved) {
                        apply_rotation(u, v, best_g);
                        sweep_gain += base - best_pair;
                    }
                }
            }
            current -= sweep_gain;
            if (sweep_gain < cfg.tol) {
                stationary = true;
                break;
            }
        }

        current = total_objective(members);
        any_stationary = any_stationary || stationary;
        if (!have_best || current < best_value) {
            best_value = current;
            best_members = members;
            have_best = true;
        }
    }

    if (!any_stationary) {
        throw ConvergenceFailure("no restart reached stationarity within " +
                                 std::to_string(cfg.max_sweeps) + " sweeps");
    }

    TauMinResult result;
    result.value = best_value;
    result.method = TauMinResult::Method::ConvexRoof;
    Ensemble witness;
    for (const auto& phi : best_members) {
        const double p = phi.squaredNorm();
        if (p <= kMemberDropTol) continue;
        witness.members.push_back({p, StateVector(n, phi / std::sqrt(p))});
    }
    result.witness = std::move(witness);
    return result;
}

CkwReport check_ckw(const StateVector& psi) {
    if (psi.num_qubits() != 3) {
        throw WrongQubitCount("CKW identity applies to 3-qubit pure states, got n = " +
                              std::to_string(psi.num_qubits()));
    }
    CkwReport report;
    report.lhs = tangle_one_vs_rest(psi, 1);
    const double c12 = concurrence_mixed_2q(partial_trace(psi, {1, 2}));
    const double c13 = concurrence_mixed_2q(partial_trace(psi, {1, 3}));
    report.tau_min_12 = c12 * c12;
    report.tau_min_13 = c13 * c13;
    report.three_tangle = three_tangle(psi);
    report.rhs = report.tau_min_12 + report.tau_min_13 + report.three_tangle;
    report.residual = std::abs(report.lhs - report.rhs);
    return report;
}

WeqReport check_w_equality(int n) {
    if (n < 3 || n > 6) {
        throw UnsupportedSize("W equality check supports 3..6 qubits, got " +
                              std::to_string(n));
    }
    const StateVector w = make_w(n);
    WeqReport report;
    report.n = n;
    for (int j = 2; j <= n; ++j) {
        const double c = concurrence_mixed_2q(partial_trace(w, {1, j}));
        report.pair_concurrences.push_back(c);
        report.pairwise_sum += c * c;
    }
    report.one_vs_rest = tangle_one_vs_rest(w, 1);
    report.residual = std::abs(report.pairwise_sum - report.one_vs_rest);
    return report;
}

}  // namespace qtangle
