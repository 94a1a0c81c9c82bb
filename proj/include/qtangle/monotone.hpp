#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qtangle/numeric.hpp"
#include "qtangle/state.hpp"

namespace qtangle {

// Two-element local POVM {A1, A2} with A_i = U_i D_i V, D1 = diag(a, b),
// D2 = diag(sqrt(1-a^2), sqrt(1-b^2)). Completeness A1*A1 + A2*A2 = I holds
// by construction.
struct PovmPair {
    ComplexMatrix A1, A2;
    ComplexMatrix U1, U2, V;
    double a = 1.0, b = 1.0;
};

PovmPair make_povm_pair(double a, double b, const ComplexMatrix& U1, const ComplexMatrix& U2,
                        const ComplexMatrix& V);

// a, b uniform on [0,1]; U1, U2, V Haar. Deterministic per seed.
PovmPair random_povm_pair(std::uint64_t seed);

// Post-measurement branch: probability and normalized state, or no state
// when the branch probability is below 1e-12.
struct MeasurementOutcome {
    double p = 0.0;
    std::optional<StateVector> phi;
};

std::pair<MeasurementOutcome, MeasurementOutcome> apply_povm(const StateVector& psi,
                                                             const PovmPair& pair, int party);

// [p1 tau(phi1) + p2 tau(phi2)] / tau(psi). Throws ZeroTangle when tau(psi)
// is below 1e-12 so callers can skip the trial.
double monotone_trial(const StateVector& psi, const PovmPair& pair, int party);

struct MonotoneTrialRecord {
    std::uint64_t seed = 0;
    int n = 0;
    int party = 0;
    double ratio = 0.0;
};

struct MonotoneReport {
    int n = 0;
    int trials = 0;
    int skipped = 0;
    int violations = 0;
    double tol = 0.0;
    double max_ratio = 0.0;
    std::vector<MonotoneTrialRecord> records;
};

// `trials` random (state, POVM, party) draws at fixed n; parties cycle
// round-robin; per-trial seeds come from substreams of `seed`, so the
// report does not depend on execution order.
MonotoneReport run_monotone_suite(int n, int trials, std::uint64_t seed, double tol = 1e-9);

}  // namespace qtangle
