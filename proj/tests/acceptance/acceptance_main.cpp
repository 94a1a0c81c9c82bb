// Acceptance gate: every release-blocking property, one pass/fail line each,
// with the stated tolerance and a wall-clock budget per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qtangle/monotone.hpp"
#include "qtangle/numeric.hpp"
#include "qtangle/rng.hpp"
#include "qtangle/state.hpp"
#include "qtangle/tangle_mixed.hpp"
#include "qtangle/tangle_pure.hpp"

using namespace qtangle;

namespace {

struct Outcome {
    bool pass = true;
    double worst = 0.0;  // criterion-specific figure of merit
    std::string note;
};

void track(Outcome& o, double deviation, double tol) {
    o.worst = std::max(o.worst, deviation);
    if (deviation > tol) o.pass = false;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

// --- 1: named-state values, tolerance 1e-9 -------------------------------

Outcome criterion_named_values() {
    constexpr double tol = 1e-9;
    Outcome o;
    track(o, std::abs(three_tangle(make_ghz()) - 1.0), tol);
    track(o, std::abs(three_tangle(make_w(3))), tol);
    for (int n : {2, 3, 4, 6}) track(o, std::abs(n_tangle(make_cat(n)) - 1.0), tol);
    for (int n : {3, 4, 6}) track(o, std::abs(n_tangle(make_w(n))), tol);
    track(o, std::abs(n_tangle(make_w(2)) - 1.0), tol);
    track(o, std::abs(n_tangle(make_singlet_pairs(2)) - 1.0), tol);
    o.note = "max deviation " + sci(o.worst);
    return o;
}

// --- 2: fast path vs literal contraction, tolerance 1e-9 -----------------

Outcome criterion_oracle_equivalence() {
    constexpr double tol = 1e-9;
    Outcome o;
    const std::uint64_t seed = 20240201;
    for (int n : {2, 3, 4}) {
        const std::uint64_t stream = CounterRng::substream(seed, static_cast<std::uint64_t>(n));
        for (int t = 0; t < 200; ++t) {
            const StateVector psi =
                random_state(n, CounterRng::substream(stream, static_cast<std::uint64_t>(t)));
            track(o, std::abs(n_tangle(psi) - epsilon_contraction_oracle(psi)), tol);
        }
    }
    const std::uint64_t stream6 = CounterRng::substream(seed, 6);
    for (int t = 0; t < 10; ++t) {
        const StateVector psi =
            random_state(6, CounterRng::substream(stream6, static_cast<std::uint64_t>(t)));
        track(o, std::abs(n_tangle(psi) - epsilon_contraction_oracle(psi, 6, true)), tol);
    }
    o.note = "610 states, max difference " + sci(o.worst);
    return o;
}

// --- 3: monotonicity under two-element POVMs, 1000 trials per n ----------

Outcome criterion_monotonicity() {
    constexpr double tol = 1e-9;
    Outcome o;
    int skipped = 0;
    for (int n : {2, 3, 4, 6}) {
        const MonotoneReport report = run_monotone_suite(n, 1000, 77310, tol);
        skipped += report.skipped;
        track(o, std::max(0.0, report.max_ratio - 1.0), tol);
        if (report.violations != 0) o.pass = false;
    }

    // Diagonal POVMs against the closed forms: branch probability
    // a^2 P0 + b^2 P1 and post-measurement tangle a^2 b^2 tau / p1^2.
    const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
    for (int n : {2, 3, 4}) {
        for (int t = 0; t < 40; ++t) {
            CounterRng rng(CounterRng::substream(515151, static_cast<std::uint64_t>(100 * n + t)));
            const StateVector psi = random_state(n, rng.next_u64());
            const double a = rng.uniform(), b = rng.uniform();
            const PovmPair pair = make_povm_pair(a, b, id, id, id);
            const int party = 1 + t % n;

            double p0 = 0.0;
            for (Eigen::Index x = 0; x < psi.dim(); ++x) {
                if (qubit_bit(static_cast<std::uint64_t>(x), n, party) == 0) {
                    p0 += std::norm(psi[x]);
                }
            }
            const auto [o1, o2] = apply_povm(psi, pair, party);
            const double p1_expected = a * a * p0 + b * b * (1.0 - p0);
            track(o, std::abs(o1.p - p1_expected), tol);

            const double tau = n_tangle(psi);
            if (o1.phi && o1.p > 1e-6) {
                track(o, std::abs(n_tangle(*o1.phi) - a * a * b * b * tau / (o1.p * o1.p)), tol);
            }
            if (o2.phi && o2.p > 1e-6) {
                const double c2 = (1.0 - a * a) * (1.0 - b * b);
                track(o, std::abs(n_tangle(*o2.phi) - c2 * tau / (o2.p * o2.p)), tol);
            }
        }
    }
    o.note = "4000 trials (" + std::to_string(skipped) + " skipped), worst excess/closed-form gap " +
             sci(o.worst);
    return o;
}

// --- 4: three-qubit splitting identity, tolerance 1e-8 -------------------

Outcome criterion_ckw() {
    constexpr double tol = 1e-8;
    Outcome o;
    for (int t = 0; t < 200; ++t) {
        const StateVector psi =
            random_state(3, CounterRng::substream(44004, static_cast<std::uint64_t>(t)));
        track(o, check_ckw(psi).residual, tol);
    }
    track(o, check_ckw(make_ghz()).residual, tol);
    track(o, check_ckw(make_w(3)).residual, tol);
    o.note = "202 states, max residual " + sci(o.worst);
    return o;
}

// --- 5: W-state pairwise equality, tolerance 1e-9 ------------------------

Outcome criterion_w_equality() {
    constexpr double tol = 1e-9;
    Outcome o;
    for (int n : {3, 4, 5, 6}) track(o, check_w_equality(n).residual, tol);
    o.note = "n in {3,4,5,6}, max residual " + sci(o.worst);
    return o;
}

// --- 6: mixed-state consistency ------------------------------------------

Outcome criterion_mixed_consistency() {
    Outcome o;
    for (int n : {2, 4}) {
        const std::uint64_t stream = CounterRng::substream(66006, static_cast<std::uint64_t>(n));
        for (int t = 0; t < 100; ++t) {
            const StateVector psi =
                random_state(n, CounterRng::substream(stream, static_cast<std::uint64_t>(t)));
            const double analytic = tau_min_analytic(DensityMatrix::from_pure(psi)).value;
            track(o, std::abs(analytic - n_tangle(psi)), 1e-9);
        }
    }

    double roof_worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        CounterRng rng(CounterRng::substream(66106, static_cast<std::uint64_t>(t)));
        const StateVector psi1 = random_state(2, rng.next_u64());
        const StateVector psi2 = random_state(2, rng.next_u64());
        const double w = 0.25 + 0.5 * rng.uniform();
        ComplexMatrix m = w * (psi1.amplitudes() * psi1.amplitudes().adjoint()) +
                          (1.0 - w) * (psi2.amplitudes() * psi2.amplitudes().adjoint());
        m = 0.5 * (m + m.adjoint().eval());
        const DensityMatrix rho(2, std::move(m));

        const double analytic = tau_min_analytic(rho).value;
        ConvexRoofConfig cfg;
        cfg.seed = CounterRng::substream(66206, static_cast<std::uint64_t>(t));
        const double roof = convex_roof_minimize(
            rho, [](const StateVector& s) { return n_tangle(s); }, cfg).value;
        const double gap = std::abs(roof - analytic);
        roof_worst = std::max(roof_worst, gap);
        if (gap > 1e-4) o.pass = false;
    }
    o.note = "pure-projector gap " + sci(o.worst) + ", roof-vs-analytic gap " +
             sci(roof_worst);
    o.worst = std::max(o.worst, roof_worst);
    return o;
}

// --- 7: invariance suites plus the odd-n counterexample ------------------

Outcome criterion_invariance() {
    constexpr double tol = 1e-9;
    Outcome o;
    for (int n : {2, 3, 4}) {
        const std::uint64_t stream = CounterRng::substream(77007, static_cast<std::uint64_t>(n));
        for (int t = 0; t < 100; ++t) {
            CounterRng rng(CounterRng::substream(stream, static_cast<std::uint64_t>(t)));
            StateVector psi = random_state(n, rng.next_u64());
            const double base = n_tangle(psi);

            std::vector<int> perm(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k + 1;
            for (int i = n - 1; i > 0; --i) {
                const int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
                std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
            }
            track(o, std::abs(n_tangle(permute_qubits(psi, perm)) - base), tol);

            for (int q = 1; q <= n; ++q) {
                psi = apply_one_qubit_unitary(psi, q, haar_unitary(2, rng));
            }
            track(o, std::abs(n_tangle(psi) - base), tol);
        }
    }

    double witness = 0.0;
    for (int t = 0; t < 5 && witness <= 1e-3; ++t) {
        const StateVector psi = random_state(5, CounterRng::substream(77107, static_cast<std::uint64_t>(t)));
        witness = std::max(witness, std::abs(epsilon_contraction_oracle(psi, 5, true) -
                                             epsilon_contraction_oracle(psi, 1, true)));
    }
    if (witness <= 1e-3) o.pass = false;
    o.note = "max invariance deviation " + sci(o.worst) +
             ", odd-n placement difference " + sci(witness);
    return o;
}

struct Criterion {
    int number;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "named-state values (tol 1e-9)", 1.0, criterion_named_values},
        {2, "fast vs literal contraction, 610 random states (tol 1e-9)", 120.0,
         criterion_oracle_equivalence},
        {3, "POVM monotonicity, 1000 trials per n in {2,3,4,6} (tol 1e-9)", 120.0,
         criterion_monotonicity},
        {4, "three-qubit splitting identity, 200 random states (tol 1e-8)", 30.0,
         criterion_ckw},
        {5, "W-state pairwise equality, n in {3,4,5,6} (tol 1e-9)", 30.0,
         criterion_w_equality},
        {6, "mixed-state consistency: projectors (1e-9) and convex roof (1e-4)", 300.0,
         criterion_mixed_consistency},
        {7, "local-unitary/permutation invariance (1e-9) and odd-n counterexample (>1e-3)",
         60.0, criterion_invariance},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.note = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = elapsed <= criterion.budget_s;
        const bool pass = outcome.pass && in_budget;
        if (!pass) ++failures;
        std::printf("[%s] %d. %s: %s; %.2f s of %.0f s budget%s\n", pass ? "PASS" : "FAIL",
                    criterion.number, criterion.name, outcome.note.c_str(), elapsed,
                    criterion.budget_s, in_budget ? "" : " EXCEEDED");
    }
    std::printf("[%s] 8. no empirical tables exist to reproduce; criteria 1-7 cover all "
                "quantitative claims\n",
                failures == 0 ? "PASS" : "NOTE");
    std::printf("acceptance: %d/7 executable criteria passed\n",
                7 - failures);
    return failures == 0 ? 0 : 1;
}
