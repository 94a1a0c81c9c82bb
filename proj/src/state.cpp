#include "qtangle/state.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qtangle/errors.hpp"
#include "qtangle/limits.hpp"

namespace qtangle {
namespace {

constexpr double kNormTol = 1e-6;
constexpr double kTraceTol = 1e-8;
constexpr double kDensityPsdTol = 1e-9;

void check_qubit_count(int n, int cap, const char* what) {
    if (n < 1) throw DimensionTooLarge(std::string(what) + ": qubit count must be >= 1");
    if (n > cap) {
        throw DimensionTooLarge(std::string(what) + ": " + std::to_string(n) +
                                " qubits exceeds the cap of " + std::to_string(cap));
    }
}

// Sorted unique keep set, validated against 1..n.
std::vector<int> canonical_keep(const std::vector<int>& keep, int n) {
    if (keep.empty()) throw EmptyKeepSet("keep set is empty");
    std::set<int> uniq;
    for (int q : keep) {
        if (q < 1 || q > n) {
            throw IndexOutOfRange("qubit index " + std::to_string(q) +
                                  " outside 1.." + std::to_string(n));
        }
        uniq.insert(q);
    }
    return {uniq.begin(), uniq.end()};
}

// Full basis index from kept-qubit bits u and traced-qubit bits t.
// kept[] and traced[] hold 1-based qubit positions, ascending; bit 0 of
// u/t corresponds to the *last* listed qubit so that kept-subsystem
// indices read in the usual MSB-first order.
std::uint64_t assemble_index(std::uint64_t u, std::uint64_t t, int n,
                             const std::vector<int>& kept,
                             const std::vector<int>& traced) {
    std::uint64_t x = 0;
    const int k = static_cast<int>(kept.size());
    for (int j = 0; j < k; ++j) {
        const std::uint64_t bit = (u >> (k - 1 - j)) & 1u;
        x |= bit << (n - kept[static_cast<std::size_t>(j)]);
    }
    const int m = static_cast<int>(traced.size());
    for (int j = 0; j < m; ++j) {
        const std::uint64_t bit = (t >> (m - 1 - j)) & 1u;
        x |= bit << (n - traced[static_cast<std::size_t>(j)]);
    }
    return x;
}

std::vector<int> complement_set(const std::vector<int>& kept, int n) {
    std::vector<int> traced;
    traced.reserve(static_cast<std::size_t>(n) - kept.size());
    auto it = kept.begin();
    for (int q = 1; q <= n; ++q) {
        if (it != kept.end() && *it == q) {
            ++it;
        } else {
            traced.push_back(q);
        }
    }
    return traced;
}

}  // namespace

StateVector::StateVector(int n, ComplexVector amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    check_qubit_count(n_, max_pure_qubits(), "StateVector");
    const Eigen::Index expected = Eigen::Index(1) << n_;
    if (amps_.size() != expected) {
        throw UnsupportedSize("amplitude count " + std::to_string(amps_.size()) +
                              " does not match 2^" + std::to_string(n_));
    }
    const double nrm = amps_.norm();
    if (std::abs(nrm - 1.0) > kNormTol) {
        throw NormError("state norm " + std::to_string(nrm) +
                        " deviates from 1 by more than 1e-6");
    }
}

StateVector StateVector::from_amplitudes(ComplexVector amplitudes) {
    const Eigen::Index len = amplitudes.size();
    if (len < 2 || (len & (len - 1)) != 0) {
        throw UnsupportedSize("amplitude count " + std::to_string(len) +
                              " is not a power of two >= 2");
    }
    int n = 0;
    while ((Eigen::Index(1) << n) < len) ++n;
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::normalized(int n, ComplexVector amplitudes) {
    const double nrm = amplitudes.norm();
    if (nrm < 1e-12) throw NormError("cannot normalize a (near-)zero vector");
    return StateVector(n, amplitudes / nrm);
}

DensityMatrix::DensityMatrix(int n, ComplexMatrix matrix) : n_(n), mat_(std::move(matrix)) {
    check_qubit_count(n_, max_mixed_qubits(), "DensityMatrix");
    const Eigen::Index expected = Eigen::Index(1) << n_;
    if (mat_.rows() != expected || mat_.cols() != expected) {
        throw UnsupportedSize("matrix is " + std::to_string(mat_.rows()) + "x" +
                              std::to_string(mat_.cols()) + ", expected 2^" +
                              std::to_string(n_) + " square");
    }
    const double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-10) {
        throw NotHermitian("density matrix deviates from Hermitian by " +
                           std::to_string(herm_dev));
    }
    const double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw TraceError("density matrix trace " + std::to_string(tr) +
                         " deviates from 1 by more than 1e-8");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        ComplexMatrix(0.5 * (mat_ + mat_.adjoint())), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kDensityPsdTol) {
        throw NotPSD("density matrix eigenvalue " +
                     std::to_string(solver.eigenvalues().minCoeff()) + " below -1e-9");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    check_qubit_count(psi.num_qubits(), max_mixed_qubits(), "DensityMatrix");
    ComplexMatrix m = psi.amplitudes() * psi.amplitudes().adjoint();
    return DensityMatrix(psi.num_qubits(), std::move(m));
}

StateVector make_cat(int n) {
    check_qubit_count(n, max_pure_qubits(), "CAT");
    const Eigen::Index dim = Eigen::Index(1) << n;
    ComplexVector a = ComplexVector::Zero(dim);
    const double inv = 1.0 / std::sqrt(2.0);
    a[0] = inv;
    a[dim - 1] = inv;
    return StateVector(n, std::move(a));
}

StateVector make_w(int n) {
    if (n < 2) throw UnsupportedSize("W state needs at least 2 qubits");
    check_qubit_count(n, max_pure_qubits(), "W");
    const Eigen::Index dim = Eigen::Index(1) << n;
    ComplexVector a = ComplexVector::Zero(dim);
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    for (int q = 0; q < n; ++q) a[Eigen::Index(1) << q] = inv;
    return StateVector(n, std::move(a));
}

StateVector make_ghz() { return make_cat(3); }

StateVector make_singlet_pairs(int pairs) {
    if (pairs < 1) throw UnsupportedSize("need at least one singlet pair");
    check_qubit_count(2 * pairs, max_pure_qubits(), "SINGLET_PAIRS");
    const double inv = 1.0 / std::sqrt(2.0);
    ComplexVector singlet(4);
    singlet << 0.0, inv, -inv, 0.0;
    StateVector out(2, singlet);
    for (int k = 1; k < pairs; ++k) out = tensor_product(out, StateVector(2, singlet));
    return out;
}

StateVector make_basis(const std::string& bits) {
    const int n = static_cast<int>(bits.size());
    check_qubit_count(n, max_pure_qubits(), "BASIS");
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw UnsupportedSize("basis label must be a bitstring, got '" + bits + "'");
        }
        index = (index << 1) | static_cast<std::uint64_t>(c - '0');
    }
    ComplexVector a = ComplexVector::Zero(Eigen::Index(1) << n);
    a[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(n, std::move(a));
}

StateVector make_named_state(const NamedStateKind& kind) {
    switch (kind.tag) {
        case NamedStateKind::Tag::Cat: return make_cat(kind.n);
        case NamedStateKind::Tag::W: return make_w(kind.n);
        case NamedStateKind::Tag::Ghz: return make_ghz();
        case NamedStateKind::Tag::SingletPairs: return make_singlet_pairs(kind.n);
        case NamedStateKind::Tag::Basis: return make_basis(kind.bits);
    }
    throw UnsupportedSize("unknown named state kind");
}

StateVector random_state(int n, std::uint64_t seed) {
    check_qubit_count(n, max_pure_qubits(), "random_state");
    CounterRng rng(seed);
    ComplexVector a = gaussian_vector(Eigen::Index(1) << n, rng);
    return StateVector(n, a / a.norm());
}

DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep) {
    const int n = psi.num_qubits();
    const std::vector<int> kept = canonical_keep(keep, n);
    const std::vector<int> traced = complement_set(kept, n);
    const int k = static_cast<int>(kept.size());
    const Eigen::Index kd = Eigen::Index(1) << k;
    const Eigen::Index td = Eigen::Index(1) << (n - k);

    ComplexMatrix rho = ComplexMatrix::Zero(kd, kd);
    for (Eigen::Index u = 0; u < kd; ++u) {
        for (Eigen::Index v = 0; v <= u; ++v) {
            Complex sum = 0.0;
            for (Eigen::Index t = 0; t < td; ++t) {
                const auto iu = assemble_index(static_cast<std::uint64_t>(u),
                                               static_cast<std::uint64_t>(t), n, kept, traced);
                const auto iv = assemble_index(static_cast<std::uint64_t>(v),
                                               static_cast<std::uint64_t>(t), n, kept, traced);
                sum += psi[static_cast<Eigen::Index>(iu)] *
                       std::conj(psi[static_cast<Eigen::Index>(iv)]);
            }
            rho(u, v) = sum;
            if (u != v) rho(v, u) = std::conj(sum);
        }
    }
    return DensityMatrix(k, std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const int n = rho.num_qubits();
    const std::vector<int> kept = canonical_keep(keep, n);
    const std::vector<int> traced = complement_set(kept, n);
    const int k = static_cast<int>(kept.size());
    const Eigen::Index kd = Eigen::Index(1) << k;
    const Eigen::Index td = Eigen::Index(1) << (n - k);

    ComplexMatrix out = ComplexMatrix::Zero(kd, kd);
    for (Eigen::Index u = 0; u < kd; ++u) {
        for (Eigen::Index v = 0; v < kd; ++v) {
            Complex sum = 0.0;
            for (Eigen::Index t = 0; t < td; ++t) {
                const auto iu = assemble_index(static_cast<std::uint64_t>(u),
                                               static_cast<std::uint64_t>(t), n, kept, traced);
                const auto iv = assemble_index(static_cast<std::uint64_t>(v),
                                               static_cast<std::uint64_t>(t), n, kept, traced);
                sum += rho.matrix()(static_cast<Eigen::Index>(iu),
                                    static_cast<Eigen::Index>(iv));
            }
            out(u, v) = sum;
        }
    }
    return DensityMatrix(k, std::move(out));
}

ComplexVector apply_one_qubit(const ComplexVector& amps, int n, int qubit,
                              const ComplexMatrix& a) {
    if (a.rows() != 2 || a.cols() != 2) throw UnsupportedSize("one-qubit operator must be 2x2");
    if (qubit < 1 || qubit > n) {
        throw IndexOutOfRange("qubit " + std::to_string(qubit) + " outside 1.." +
                              std::to_string(n));
    }
    const Eigen::Index stride = Eigen::Index(1) << (n - qubit);
    ComplexVector out(amps.size());
    for (Eigen::Index x = 0; x < amps.size(); ++x) {
        if ((x & stride) != 0) continue;
        const Eigen::Index x1 = x | stride;
        out[x] = a(0, 0) * amps[x] + a(0, 1) * amps[x1];
        out[x1] = a(1, 0) * amps[x] + a(1, 1) * amps[x1];
    }
    return out;
}

StateVector apply_one_qubit_unitary(const StateVector& psi, int qubit, const ComplexMatrix& u) {
    return StateVector(psi.num_qubits(),
                       apply_one_qubit(psi.amplitudes(), psi.num_qubits(), qubit, u));
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    const int n = a.num_qubits() + b.num_qubits();
    check_qubit_count(n, max_pure_qubits(), "tensor_product");
    const Eigen::Index bd = b.dim();
    ComplexVector out(a.dim() * bd);
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
        out.segment(i * bd, bd) = a[i] * b.amplitudes();
    }
    return StateVector(n, std::move(out));
}

}  // namespace qtangle
