#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qtangle/errors.hpp"
#include "qtangle/numeric.hpp"
#include "qtangle/rng.hpp"
#include "qtangle/state.hpp"
#include "qtangle/tangle_pure.hpp"

using namespace qtangle;

TEST_CASE("epsilon symbol") {
    CHECK(epsilon(0, 1) == 1);
    CHECK(epsilon(1, 0) == -1);
    CHECK(epsilon(0, 0) == 0);
    CHECK(epsilon(1, 1) == 0);
}

TEST_CASE("spin flip complements basis labels up to phase") {
    const StateVector flipped = spin_flip(make_basis("01"));
    CHECK(std::abs(flipped[0b10]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(flipped[0b01]) == 0.0);

    const StateVector one = spin_flip(make_basis("0"));
    CHECK(std::abs(one[1]) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(spin_flip(random_state(5, 3)).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("double spin flip returns the state up to (-1)^n") {
    for (int n : {1, 2, 3, 4}) {
        const StateVector psi = random_state(n, 50u + static_cast<std::uint64_t>(n));
        const StateVector twice = spin_flip(spin_flip(psi));
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        CHECK((twice.amplitudes() - sign * psi.amplitudes()).norm() < 1e-14);
    }
}

TEST_CASE("concurrence of the named two-qubit states") {
    CHECK(concurrence_pure(make_cat(2)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concurrence_pure(make_w(2)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concurrence_pure(make_basis("00")) == 0.0);
}

TEST_CASE("concurrence vanishes identically for odd qubit counts") {
    // Exact zero, not merely small: the paired summation cancels term by term.
    for (int n : {1, 3, 5, 7}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            CHECK(concurrence_pure(random_state(n, 1000 * seed + static_cast<std::uint64_t>(n))) ==
                  0.0);
        }
    }
}

TEST_CASE("n-tangle of the named states") {
    for (int n : {2, 3, 4, 6}) {
        CHECK(n_tangle(make_cat(n)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(n_tangle(make_w(2)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n_tangle(make_w(3)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(n_tangle(make_w(4)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(n_tangle(make_w(6)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(n_tangle(make_singlet_pairs(2)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("n-tangle refuses odd n beyond three") {
    CHECK_THROWS_AS(n_tangle(random_state(5, 1)), UndefinedForOddN);
    CHECK_THROWS_AS(n_tangle(random_state(1, 1)), UndefinedForOddN);
}

TEST_CASE("three-tangle values") {
    CHECK(three_tangle(make_ghz()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(three_tangle(make_w(3)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(three_tangle(make_basis("000")) == 0.0);
    CHECK_THROWS_AS(three_tangle(make_cat(2)), WrongQubitCount);
}

TEST_CASE("three-tangle agrees with the literal contraction") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const StateVector psi = random_state(3, 600 + seed);
        CHECK(std::abs(three_tangle(psi) - epsilon_contraction_oracle(psi)) < 1e-12);
    }
}

TEST_CASE("oracle matches the fast path on random states") {
    CHECK(epsilon_contraction_oracle(make_cat(4)) == doctest::Approx(1.0).epsilon(1e-12));
    const StateVector fixed = random_state(4, 42);
    CHECK(std::abs(n_tangle(fixed) - epsilon_contraction_oracle(fixed)) < 1e-9);
    for (int n : {2, 3, 4}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const StateVector psi = random_state(n, 700 + 31 * seed + static_cast<std::uint64_t>(n));
            CHECK(std::abs(n_tangle(psi) - epsilon_contraction_oracle(psi)) < 1e-9);
        }
    }
}

TEST_CASE("oracle index placement is irrelevant for even n and n = 3") {
    for (int n : {2, 3, 4}) {
        const StateVector psi = random_state(n, 900 + static_cast<std::uint64_t>(n));
        const double base = epsilon_contraction_oracle(psi, n);
        for (int k = 1; k < n; ++k) {
            CHECK(std::abs(epsilon_contraction_oracle(psi, k) - base) < 1e-12);
        }
    }
}

TEST_CASE("oracle index placement matters at n = 5") {
    const StateVector psi = random_state(5, 1234);
    const double at5 = epsilon_contraction_oracle(psi, 5, true);
    const double at1 = epsilon_contraction_oracle(psi, 1, true);
    CHECK(std::abs(at5 - at1) > 1e-3);
}

TEST_CASE("oracle size guards") {
    CHECK_THROWS_AS(epsilon_contraction_oracle(random_state(5, 1)), OracleTooLarge);
    CHECK_THROWS_AS(epsilon_contraction_oracle(random_state(7, 1), 0, true), OracleTooLarge);
    CHECK_THROWS_AS(epsilon_contraction_oracle(random_state(2, 1), 3), IndexOutOfRange);
}

TEST_CASE("qubit permutations") {
    const StateVector psi = make_basis("01");
    const StateVector swapped = permute_qubits(psi, {2, 1});
    CHECK(swapped[0b10] == Complex(1.0, 0.0));

    const StateVector random = random_state(3, 8);
    const StateVector same = permute_qubits(random, {1, 2, 3});
    CHECK((same.amplitudes() - random.amplitudes()).norm() == 0.0);

    const StateVector twice = permute_qubits(permute_qubits(random, {2, 1, 3}), {2, 1, 3});
    CHECK((twice.amplitudes() - random.amplitudes()).norm() == 0.0);

    // permute(permute(psi, p), q) relabels j -> q[p[j]]
    const std::vector<int> p{2, 3, 1}, q{3, 1, 2};
    std::vector<int> composed(3);
    for (int j = 0; j < 3; ++j) composed[static_cast<std::size_t>(j)] =
        q[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)];
    const StateVector lhs = permute_qubits(permute_qubits(random, p), q);
    const StateVector rhs = permute_qubits(random, composed);
    CHECK((lhs.amplitudes() - rhs.amplitudes()).norm() == 0.0);

    CHECK_THROWS_AS(permute_qubits(psi, {1}), NotAPermutation);
    CHECK_THROWS_AS(permute_qubits(psi, {1, 1}), NotAPermutation);
    CHECK_THROWS_AS(permute_qubits(psi, {0, 1}), NotAPermutation);
}

TEST_CASE("tangle is invariant under qubit permutations") {
    CounterRng perm_rng(77);
    for (int n : {2, 3, 4}) {
        const StateVector psi = random_state(n, 1100 + static_cast<std::uint64_t>(n));
        const double base = n_tangle(psi);
        for (int i = 1; i <= n; ++i) {
            for (int j = i + 1; j <= n; ++j) {
                std::vector<int> perm(static_cast<std::size_t>(n));
                for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k + 1;
                std::swap(perm[static_cast<std::size_t>(i - 1)], perm[static_cast<std::size_t>(j - 1)]);
                CHECK(std::abs(n_tangle(permute_qubits(psi, perm)) - base) < 1e-9);
            }
        }
    }
}

TEST_CASE("tangle is invariant under local unitaries") {
    CounterRng rng(313);
    for (int n : {2, 3, 4}) {
        for (int trial = 0; trial < 5; ++trial) {
            StateVector psi = random_state(n, rng.next_u64());
            const double base = n_tangle(psi);
            for (int q = 1; q <= n; ++q) {
                psi = apply_one_qubit_unitary(psi, q, haar_unitary(2, rng));
            }
            CHECK(std::abs(n_tangle(psi) - base) < 1e-9);
        }
    }
}

TEST_CASE("tangle is invariant under a global phase") {
    const StateVector psi = random_state(4, 31);
    const double base = n_tangle(psi);

    // Quarter-turn phases are exact in floating point, so so is the tangle.
    const StateVector rotated(4, Complex(0.0, 1.0) * psi.amplitudes());
    CHECK(n_tangle(rotated) == base);
    const StateVector negated(4, Complex(-1.0, 0.0) * psi.amplitudes());
    CHECK(n_tangle(negated) == base);

    const Complex phase = std::polar(1.0, 0.7331);
    const StateVector generic = StateVector::normalized(4, phase * psi.amplitudes());
    CHECK(std::abs(n_tangle(generic) - base) < 1e-12);
}

TEST_CASE("tangle stays in the unit interval") {
    for (int n : {2, 3, 4}) {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const double tau = n_tangle(random_state(n, 1300 + seed * 7));
            CHECK(tau >= 0.0);
            CHECK(tau <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("one-vs-rest tangle") {
    for (int i = 1; i <= 4; ++i) {
        CHECK(tangle_one_vs_rest(make_cat(4), i) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(tangle_one_vs_rest(make_basis("0000"), 2) == doctest::Approx(0.0));
    for (int n : {3, 4, 5, 6}) {
        const double expected = 4.0 * (n - 1) / (static_cast<double>(n) * n);
        CHECK(tangle_one_vs_rest(make_w(n), 1) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK_THROWS_AS(tangle_one_vs_rest(make_cat(3), 4), IndexOutOfRange);
}
