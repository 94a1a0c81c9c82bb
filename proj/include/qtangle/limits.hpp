#pragma once

namespace qtangle {

inline constexpr int kMaxPureQubits = 12;
inline constexpr int kMaxMixedQubits = 6;
inline constexpr int kOracleDefaultQubits = 4;
inline constexpr int kOracleHardCapQubits = 6;

// Effective caps. The environment variable QTANGLE_MAX_QUBITS may lower
// (never raise) each of these.
int max_pure_qubits();
int max_mixed_qubits();
int max_oracle_qubits();        // literal contraction without override
int max_oracle_qubits_large();  // literal contraction with explicit override

}  // namespace qtangle
