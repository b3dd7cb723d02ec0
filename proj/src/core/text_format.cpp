#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sisz/errors.hpp"
#include "sisz/io.hpp"

namespace sisz {

namespace {

template <class T>
void write_any(std::ostream& out, const Matrix<T>& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << to_string(m(r, c));
    }
    out << '\n';
  }
}

std::size_t read_dim(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) throw ParseError(std::string("missing matrix ") + what);
  const Integer v = parse_integer(token);
  if (v < 1 || v > 1'000'000) throw ParseError(std::string("bad matrix ") + what + ": " + token);
  return static_cast<std::size_t>(v.get_ui());
}

template <class T, class Parse>
Matrix<T> read_any(std::istream& in, Parse parse) {
  const std::size_t rows = read_dim(in, "row count");
  const std::size_t cols = read_dim(in, "column count");
  Matrix<T> m(rows, cols);
  std::string token;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(in >> token)) throw ParseError("matrix ends early");
      m(r, c) = parse(token);
    }
  return m;
}

}  // namespace

void write_matrix(std::ostream& out, const IntegerMatrix& m) { write_any(out, m); }
void write_matrix(std::ostream& out, const RationalMatrix& m) { write_any(out, m); }

IntegerMatrix read_integer_matrix(std::istream& in) {
  return read_any<Integer>(in, [](const std::string& t) { return parse_integer(t); });
}

RationalMatrix read_rational_matrix(std::istream& in) {
  return read_any<Rational>(in, [](const std::string& t) { return parse_rational(t); });
}

std::string format_matrix(const IntegerMatrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

IntegerMatrix parse_integer_matrix(const std::string& text) {
  std::istringstream in(text);
  IntegerMatrix m = read_integer_matrix(in);
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after matrix: " + extra);
  return m;
}

std::string format_vector(const IntVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += to_string(v[i]);
  }
  return out;
}

IntVec parse_vector(const std::string& text) {
  std::istringstream in(text);
  IntVec v;
  std::string token;
  while (in >> token) v.push_back(parse_integer(token));
  if (v.empty()) throw ParseError("empty vector");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace sisz
