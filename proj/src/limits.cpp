#include "qtangle/limits.hpp"

#include <cstdlib>
#include <string>

namespace qtangle {
namespace {

int capped(int hard_cap) {
    const char* env = std::getenv("QTANGLE_MAX_QUBITS");
    if (env == nullptr) return hard_cap;
    try {
        const int requested = std::stoi(env);
        if (requested >= 1 && requested < hard_cap) return requested;
    } catch (...) {
        // unparsable values are ignored
    }
    return hard_cap;
}

}  // namespace

int max_pure_qubits() { return capped(kMaxPureQubits); }
int max_mixed_qubits() { return capped(kMaxMixedQubits); }
int max_oracle_qubits() { return capped(kOracleDefaultQubits); }
int max_oracle_qubits_large() { return capped(kOracleHardCapQubits); }

}  // namespace qtangle
