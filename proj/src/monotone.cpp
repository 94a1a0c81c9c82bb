#include "qtangle/monotone.hpp"

#include <cmath>

#include "qtangle/errors.hpp"
#include "qtangle/rng.hpp"
#include "qtangle/tangle_pure.hpp"

namespace qtangle {
namespace {

constexpr double kNullBranchTol = 1e-12;
constexpr double kZeroTangleTol = 1e-12;

void require_unitary_2x2(const ComplexMatrix& u, const char* name) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw NotUnitary(std::string(name) + " must be 2x2");
    }
    const double dev = (u.adjoint() * u - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
    if (dev > 1e-10) {
        throw NotUnitary(std::string(name) + " deviates from unitary by " +
                         std::to_string(dev));
    }
}

MeasurementOutcome make_outcome(ComplexVector phi_hat, int n) {
    MeasurementOutcome out;
    out.p = phi_hat.squaredNorm();
    if (out.p > kNullBranchTol) {
        out.phi = StateVector(n, phi_hat / std::sqrt(out.p));
    }
    return out;
}

}  // namespace

PovmPair make_povm_pair(double a, double b, const ComplexMatrix& U1, const ComplexMatrix& U2,
                        const ComplexMatrix& V) {
    if (a < 0.0 || a > 1.0 || b < 0.0 || b > 1.0) {
        throw RangeError("diagonal entries must lie in [0,1], got a = " + std::to_string(a) +
                         ", b = " + std::to_string(b));
    }
    require_unitary_2x2(U1, "U1");
    require_unitary_2x2(U2, "U2");
    require_unitary_2x2(V, "V");
    PovmPair pair;
    pair.a = a;
    pair.b = b;
    pair.U1 = U1;
    pair.U2 = U2;
    pair.V = V;
    ComplexMatrix d1 = ComplexMatrix::Zero(2, 2);
    d1(0, 0) = a;
    d1(1, 1) = b;
    ComplexMatrix d2 = ComplexMatrix::Zero(2, 2);
    d2(0, 0) = std::sqrt(std::max(0.0, 1.0 - a * a));
    d2(1, 1) = std::sqrt(std::max(0.0, 1.0 - b * b));
    pair.A1 = U1 * d1 * V;
    pair.A2 = U2 * d2 * V;
    return pair;
}

PovmPair random_povm_pair(std::uint64_t seed) {
    CounterRng rng(seed);
    const double a = rng.uniform();
    const double b = rng.uniform();
    const ComplexMatrix u1 = haar_unitary(2, rng);
    const ComplexMatrix u2 = haar_unitary(2, rng);
    const ComplexMatrix v = haar_unitary(2, rng);
    return make_povm_pair(a, b, u1, u2, v);
}

std::pair<MeasurementOutcome, MeasurementOutcome> apply_povm(const StateVector& psi,
                                                             const PovmPair& pair, int party) {
    const int n = psi.num_qubits();
    if (party < 1 || party > n) {
        throw IndexOutOfRange("party " + std::to_string(party) + " outside 1.." +
                              std::to_string(n));
    }
    return {make_outcome(apply_one_qubit(psi.amplitudes(), n, party, pair.A1), n),
            make_outcome(apply_one_qubit(psi.amplitudes(), n, party, pair.A2), n)};
}

double monotone_trial(const StateVector& psi, const PovmPair& pair, int party) {
    const double tau = n_tangle(psi);
    if (tau <= kZeroTangleTol) {
        throw ZeroTangle("tau(psi) = " + std::to_string(tau) + " is too small for a ratio");
    }
    const auto [o1, o2] = apply_povm(psi, pair, party);
    double avg = 0.0;
    if (o1.phi) avg += o1.p * n_tangle(*o1.phi);
    if (o2.phi) avg += o2.p * n_tangle(*o2.phi);
    return avg / tau;
}

MonotoneReport run_monotone_suite(int n, int trials, std::uint64_t seed, double tol) {
    if (n != 2 && n != 3 && n != 4 && n != 6) {
        throw UnsupportedSize("monotone suite runs at n in {2,3,4,6}, got " +
                              std::to_string(n));
    }
    if (trials < 1) throw RangeError("trials must be >= 1");

    MonotoneReport report;
    report.n = n;
    report.trials = trials;
    report.tol = tol;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed =
            CounterRng::substream(seed, static_cast<std::uint64_t>(t));
        const StateVector psi = random_state(n, CounterRng::substream(trial_seed, 1));
        const PovmPair pair = random_povm_pair(CounterRng::substream(trial_seed, 2));
        const int party = (t % n) + 1;
        double ratio;
        try {
            ratio = monotone_trial(psi, pair, party);
        } catch (const ZeroTangle&) {
            ++report.skipped;
            continue;
        }
        report.records.push_back({trial_seed, n, party, ratio});
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (ratio > 1.0 + tol) ++report.violations;
    }
    return report;
}

}  // namespace qtangle
