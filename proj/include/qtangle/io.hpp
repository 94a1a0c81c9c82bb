#pragma once

#include <iosfwd>
#include <string>

#include "qtangle/state.hpp"

namespace qtangle::io {

// Text formats:
//
//   QST 1                         QDM 1
//   n <qubits>                    n <qubits>
//   <re> <im>      x 2^n lines    <re>,<im> ... x 2^n   x 2^n rows
//
// Blank lines and `#` comments are allowed anywhere after column 0 text
// is stripped. Numbers are parsed as C doubles and written with %.17g,
// so a write/read round trip is bit-exact.

StateVector read_qst(std::istream& in, bool normalize = false);
StateVector read_qst_file(const std::string& path, bool normalize = false);
void write_qst(std::ostream& out, const StateVector& psi);
void write_qst_file(const std::string& path, const StateVector& psi);
std::string to_qst_string(const StateVector& psi);

DensityMatrix read_qdm(std::istream& in);
DensityMatrix read_qdm_file(const std::string& path);
void write_qdm(std::ostream& out, const DensityMatrix& rho);
void write_qdm_file(const std::string& path, const DensityMatrix& rho);
std::string to_qdm_string(const DensityMatrix& rho);

}  // namespace qtangle::io
