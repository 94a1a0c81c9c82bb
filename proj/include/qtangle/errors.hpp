#pragma once

#include <stdexcept>
#include <string>

namespace qtangle {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- linear algebra kernel ---
struct NotSquare : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };

// --- state model ---
struct DimensionTooLarge : Error { using Error::Error; };
struct UnsupportedSize : Error { using Error::Error; };
struct EmptyKeepSet : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NormError : Error { using Error::Error; };
struct TraceError : Error { using Error::Error; };

/// Malformed QST/QDM input; `line` is 1-based.
struct SyntaxError : Error {
    int line;
    SyntaxError(const std::string& what, int line_no)
        : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// --- tangles ---
struct UndefinedForOddN : Error { using Error::Error; };
struct WrongQubitCount : Error { using Error::Error; };
struct OracleTooLarge : Error { using Error::Error; };
struct NotAPermutation : Error { using Error::Error; };
struct OddNUnsupported : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };

/// Skip signal: the pre-measurement tangle is too small for a ratio.
struct ZeroTangle : Error { using Error::Error; };

}  // namespace qtangle
