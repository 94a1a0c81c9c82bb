#include "qtangle/tangle_pure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qtangle/errors.hpp"
#include "qtangle/limits.hpp"

namespace qtangle {
namespace {

Complex minus_i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

int weight(std::uint64_t x) { return std::popcount(x); }

}  // namespace

StateVector spin_flip(const StateVector& psi) {
    const int n = psi.num_qubits();
    const Eigen::Index dim = psi.dim();
    const std::uint64_t mask = static_cast<std::uint64_t>(dim) - 1;
    const Complex phase = minus_i_pow(n);
    ComplexVector out(dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        const double sign = (weight(static_cast<std::uint64_t>(x)) % 2 == 0) ? 1.0 : -1.0;
        out[x] = phase * sign *
                 std::conj(psi[static_cast<Eigen::Index>(static_cast<std::uint64_t>(x) ^ mask)]);
    }
    return StateVector(n, std::move(out));
}

double concurrence_pure(const StateVector& psi) {
    const int n = psi.num_qubits();
    const Eigen::Index half = psi.dim() / 2;
    const std::uint64_t mask = static_cast<std::uint64_t>(psi.dim()) - 1;
    // <psi|psi-tilde> = (-i)^n sum_x (-1)^{w(x)} conj(a_x a_{~x}). Grouping x
    // with its complement turns the bracket into (-1)^{w(x)} + (-1)^{n-w(x)},
    // which is exactly 0 for odd n and 2(-1)^{w(x)} for even n.
    Complex sum = 0.0;
    for (Eigen::Index x = 0; x < half; ++x) {
        const int w = weight(static_cast<std::uint64_t>(x));
        const int bracket = ((w % 2 == 0) ? 1 : -1) + (((n - w) % 2 == 0) ? 1 : -1);
        if (bracket == 0) continue;
        const Eigen::Index xc = static_cast<Eigen::Index>(static_cast<std::uint64_t>(x) ^ mask);
        sum += static_cast<double>(bracket) * std::conj(psi[x] * psi[xc]);
    }
    return std::abs(sum);
}

double n_tangle(const StateVector& psi) {
    const int n = psi.num_qubits();
    if (n % 2 == 0) {
        const double c = concurrence_pure(psi);
        return c * c;
    }
    if (n == 3) return three_tangle(psi);
    throw UndefinedForOddN("n-tangle is undefined for odd n = " + std::to_string(n) +
                           " > 3: the contraction depends on the qubit ordering");
}

double three_tangle(const StateVector& psi) {
    if (psi.num_qubits() != 3) {
        throw WrongQubitCount("three_tangle needs 3 qubits, got " +
                              std::to_string(psi.num_qubits()));
    }
    // Index layout: a_{i1 i2 i3} sits at i1<<2 | i2<<1 | i3 (qubit 1 most
    // significant). Pairs on qubits 1 and 2, the distinguished pair on 3.
    const auto bit = [](int x, int q) { return (x >> (3 - q)) & 1; };
    Complex sum = 0.0;
    for (int al = 0; al < 8; ++al) {
        for (int be = 0; be < 8; ++be) {
            for (int ga = 0; ga < 8; ++ga) {
                for (int de = 0; de < 8; ++de) {
                    const int e = epsilon(bit(al, 1), bit(be, 1)) * epsilon(bit(al, 2), bit(be, 2)) *
                                  epsilon(bit(ga, 1), bit(de, 1)) * epsilon(bit(ga, 2), bit(de, 2)) *
                                  epsilon(bit(al, 3), bit(ga, 3)) * epsilon(bit(be, 3), bit(de, 3));
                    if (e == 0) continue;
                    sum += static_cast<double>(e) * psi[al] * psi[be] * psi[ga] * psi[de];
                }
            }
        }
    }
    return 2.0 * std::abs(sum);
}

double epsilon_contraction_oracle(const StateVector& psi, int last_pair_qubit, bool allow_large) {
    const int n = psi.num_qubits();
    const int cap = allow_large ? max_oracle_qubits_large() : max_oracle_qubits();
    if (n > cap) {
        throw OracleTooLarge("oracle contraction over 2^" + std::to_string(4 * n) +
                             " index tuples refused at n = " + std::to_string(n) +
                             " (cap " + std::to_string(cap) + ")");
    }
    if (last_pair_qubit == 0) last_pair_qubit = n;
    if (last_pair_qubit < 1 || last_pair_qubit > n) {
        throw IndexOutOfRange("last_pair_qubit " + std::to_string(last_pair_qubit) +
                              " outside 1.." + std::to_string(n));
    }
    const int p = last_pair_qubit;
    const int dim = 1 << n;
    const auto bit = [n](int x, int q) { return (x >> (n - q)) & 1; };

    // Fixed nested loop order keeps the summation deterministic.
    Complex sum = 0.0;
    for (int al = 0; al < dim; ++al) {
        for (int be = 0; be < dim; ++be) {
            int sab = 1;
            for (int q = 1; q <= n && sab != 0; ++q) {
                if (q == p) continue;
                sab *= epsilon(bit(al, q), bit(be, q));
            }
            if (sab == 0) continue;
            const Complex ab = psi[al] * psi[be];
            for (int ga = 0; ga < dim; ++ga) {
                const int eag = epsilon(bit(al, p), bit(ga, p));
                if (eag == 0) continue;
                for (int de = 0; de < dim; ++de) {
                    int sgd = 1;
                    for (int q = 1; q <= n && sgd != 0; ++q) {
                        if (q == p) continue;
                        sgd *= epsilon(bit(ga, q), bit(de, q));
                    }
                    if (sgd == 0) continue;
                    const int ebd = epsilon(bit(be, p), bit(de, p));
                    if (ebd == 0) continue;
                    sum += static_cast<double>(sab * sgd * eag * ebd) * ab * psi[ga] * psi[de];
                }
            }
        }
    }
    return 2.0 * std::abs(sum);
}

StateVector permute_qubits(const StateVector& psi, const std::vector<int>& perm) {
    const int n = psi.num_qubits();
    if (static_cast<int>(perm.size()) != n) {
        throw NotAPermutation("permutation has " + std::to_string(perm.size()) +
                              " entries for " + std::to_string(n) + " qubits");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : perm) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) {
            throw NotAPermutation("entries must be a bijection on 1.." + std::to_string(n));
        }
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    const Eigen::Index dim = psi.dim();
    ComplexVector out(dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        std::uint64_t y = 0;
        for (int q = 1; q <= n; ++q) {
            const std::uint64_t b = qubit_bit(static_cast<std::uint64_t>(x), n, q);
            y |= b << (n - perm[static_cast<std::size_t>(q - 1)]);
        }
        out[static_cast<Eigen::Index>(y)] = psi[x];
    }
    return StateVector(n, std::move(out));
}

double tangle_one_vs_rest(const StateVector& psi, int qubit) {
    const int n = psi.num_qubits();
    if (qubit < 1 || qubit > n) {
        throw IndexOutOfRange("qubit " + std::to_string(qubit) + " outside 1.." +
                              std::to_string(n));
    }
    if (n < 2) throw UnsupportedSize("one-vs-rest split needs at least 2 qubits");
    const DensityMatrix rho = partial_trace(psi, {qubit});
    const double det = (rho.matrix()(0, 0) * rho.matrix()(1, 1) -
                        rho.matrix()(0, 1) * rho.matrix()(1, 0))
                           .real();
    return std::max(0.0, 4.0 * det);
}

}  // namespace qtangle
