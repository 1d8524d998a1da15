#ifndef RICCATI_FORMATS_HPP
#define RICCATI_FORMATS_HPP

#include <iosfwd>
#include <string>

#include "riccati/equation.hpp"
#include "riccati/solver.hpp"

namespace riccati {

/// Raised on malformed input files; carries the 1-based line number.
struct FileFormatError : std::runtime_error {
    int line;
    FileFormatError(const std::string& what, int line_no)
        : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

/// Equation file: one assignment per line,
///   a0 = <expr>
///   a1 = <expr>
///   a2 = <expr>
///   interval = <t_lo> <t_hi>     (optional, default [0, 1])
///   samples = <n>                (optional, default 201)
/// Blank lines and lines starting with '#' are ignored.
RiccatiEquation read_equation(std::istream& in);
RiccatiEquation read_equation_file(const std::string& path);
void write_equation(std::ostream& out, const RiccatiEquation& eq);
void write_equation_file(const std::string& path, const RiccatiEquation& eq);

/// Matrix file: alpha/beta/gamma/delta assignments plus the optional
/// interval/samples lines, same conventions as the equation file.
GroupElement read_matrix(std::istream& in);
GroupElement read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const GroupElement& g);
void write_matrix_file(const std::string& path, const GroupElement& g);

/// Trajectory CSV: header "t,x", one sample per line, "inf" for the point
/// at infinity, a trailing "# blow-up at t=<value>" comment on truncation.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Shortest round-trip decimal form of a double (also used for CSV cells).
std::string format_double(double v);

/// FNV-1a 64-bit digest of a byte string, as fixed-width hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace riccati

#endif
