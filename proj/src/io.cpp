#include "qtangle/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "qtangle/errors.hpp"
#include "qtangle/limits.hpp"

namespace qtangle::io {
namespace {

// Line-oriented reader that strips `#` comments, skips blanks, and
// remembers the line number of whatever it last handed out.
class LineSource {
public:
    explicit LineSource(std::istream& in) : in_(in) {}

    // Next non-empty payload line, or false at end of input.
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            const auto first = raw.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            const auto last = raw.find_last_not_of(" \t\r");
            out = raw.substr(first, last - first + 1);
            return true;
        }
        return false;
    }

    int line() const { return line_; }

private:
    std::istream& in_;
    int line_ = 0;
};

[[noreturn]] void fail(int line, const std::string& what) { throw SyntaxError(what, line); }

double parse_double(const std::string& token, int line) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') fail(line, "expected a number, got '" + token + "'");
    return value;
}

std::vector<std::string> split_ws(const std::string& text) {
    std::istringstream ss(text);
    std::vector<std::string> out;
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

int read_header(LineSource& src, const char* magic) {
    std::string line;
    if (!src.next(line)) fail(src.line(), std::string("missing '") + magic + " 1' header");
    const auto head = split_ws(line);
    if (head.size() != 2 || head[0] != magic || head[1] != "1") {
        fail(src.line(), std::string("expected '") + magic + " 1', got '" + line + "'");
    }
    if (!src.next(line)) fail(src.line(), "missing 'n <qubits>' line");
    const auto decl = split_ws(line);
    if (decl.size() != 2 || decl[0] != "n") {
        fail(src.line(), "expected 'n <qubits>', got '" + line + "'");
    }
    char* end = nullptr;
    const long n = std::strtol(decl[1].c_str(), &end, 10);
    if (end == decl[1].c_str() || *end != '\0' || n < 1 || n > 62) {
        fail(src.line(), "qubit count '" + decl[1] + "' is not a positive integer");
    }
    return static_cast<int>(n);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

StateVector read_qst(std::istream& in, bool normalize) {
    LineSource src(in);
    const int n = read_header(src, "QST");
    if (n > max_pure_qubits()) {
        throw DimensionTooLarge("QST declares " + std::to_string(n) +
                                " qubits, above the cap of " +
                                std::to_string(max_pure_qubits()));
    }
    const Eigen::Index dim = Eigen::Index(1) << n;
    ComplexVector amps(dim);
    std::string line;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (!src.next(line)) {
            fail(src.line(), "expected " + std::to_string(dim) + " amplitudes, got " +
                                 std::to_string(i));
        }
        const auto toks = split_ws(line);
        if (toks.size() != 2) fail(src.line(), "expected '<re> <im>', got '" + line + "'");
        amps[i] = Complex(parse_double(toks[0], src.line()), parse_double(toks[1], src.line()));
    }
    if (src.next(line)) fail(src.line(), "trailing content after amplitudes: '" + line + "'");
    return normalize ? StateVector::normalized(n, std::move(amps))
                     : StateVector(n, std::move(amps));
}

StateVector read_qst_file(const std::string& path, bool normalize) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return read_qst(in, normalize);
}

void write_qst(std::ostream& out, const StateVector& psi) {
    out << "QST 1\n";
    out << "n " << psi.num_qubits() << "\n";
    for (Eigen::Index i = 0; i < psi.dim(); ++i) {
        out << format_double(psi[i].real()) << " " << format_double(psi[i].imag()) << "\n";
    }
}

void write_qst_file(const std::string& path, const StateVector& psi) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_qst(out, psi);
}

std::string to_qst_string(const StateVector& psi) {
    std::ostringstream ss;
    write_qst(ss, psi);
    return ss.str();
}

DensityMatrix read_qdm(std::istream& in) {
    LineSource src(in);
    const int n = read_header(src, "QDM");
    if (n > max_mixed_qubits()) {
        throw DimensionTooLarge("QDM declares " + std::to_string(n) +
                                " qubits, above the cap of " +
                                std::to_string(max_mixed_qubits()));
    }
    const Eigen::Index dim = Eigen::Index(1) << n;
    ComplexMatrix mat(dim, dim);
    std::string line;
    for (Eigen::Index r = 0; r < dim; ++r) {
        if (!src.next(line)) {
            fail(src.line(),
                 "expected " + std::to_string(dim) + " rows, got " + std::to_string(r));
        }
        const auto toks = split_ws(line);
        if (static_cast<Eigen::Index>(toks.size()) != dim) {
            fail(src.line(), "row has " + std::to_string(toks.size()) + " entries, expected " +
                                 std::to_string(dim));
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            const auto& tok = toks[static_cast<std::size_t>(c)];
            const auto comma = tok.find(',');
            if (comma == std::string::npos || tok.find(',', comma + 1) != std::string::npos) {
                fail(src.line(), "expected '<re>,<im>', got '" + tok + "'");
            }
            mat(r, c) = Complex(parse_double(tok.substr(0, comma), src.line()),
                                parse_double(tok.substr(comma + 1), src.line()));
        }
    }
    if (src.next(line)) fail(src.line(), "trailing content after matrix rows: '" + line + "'");
    return DensityMatrix(n, std::move(mat));
}

DensityMatrix read_qdm_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return read_qdm(in);
}

void write_qdm(std::ostream& out, const DensityMatrix& rho) {
    out << "QDM 1\n";
    out << "n " << rho.num_qubits() << "\n";
    const auto& m = rho.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << " ";
            out << format_double(m(r, c).real()) << "," << format_double(m(r, c).imag());
        }
        out << "\n";
    }
}

void write_qdm_file(const std::string& path, const DensityMatrix& rho) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    write_qdm(out, rho);
}

std::string to_qdm_string(const DensityMatrix& rho) {
    std::ostringstream ss;
    write_qdm(ss, rho);
    return ss.str();
}

}  // namespace qtangle::io
