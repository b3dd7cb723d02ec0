#pragma once

#include <iosfwd>
#include <string>

#include "sisz/arith.hpp"
#include "sisz/matrix.hpp"

namespace sisz {

// Matrix text format: "rows cols" on the first line, then the entries in
// row-major order separated by whitespace. Rationals are written as "p/q".
void write_matrix(std::ostream& out, const IntegerMatrix& m);
void write_matrix(std::ostream& out, const RationalMatrix& m);
IntegerMatrix read_integer_matrix(std::istream& in);
RationalMatrix read_rational_matrix(std::istream& in);

std::string format_matrix(const IntegerMatrix& m);
IntegerMatrix parse_integer_matrix(const std::string& text);

// Single-line, space-separated integer vector.
std::string format_vector(const IntVec& v);
IntVec parse_vector(const std::string& text);

std::string read_file(const std::string& path);      // throws IoError
void write_file(const std::string& path, const std::string& contents);

}  // namespace sisz
