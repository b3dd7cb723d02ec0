#include "sisz/arith.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sisz/errors.hpp"

namespace sisz {

Rational to_rational(double value) {
  if (!std::isfinite(value)) throw DomainError("to_rational: non-finite value");
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

RatVec to_rational(const std::vector<double>& values) {
  RatVec out;
  out.reserve(values.size());
  for (double v : values) out.push_back(to_rational(v));
  return out;
}

RatVec to_rational(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

Integer floor(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& value) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational frac(const Rational& value) { return value - Rational(floor(value)); }

Integer isqrt(const Integer& value) {
  if (value < 0) throw DomainError("isqrt of negative value");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), value.get_mpz_t());
  return r;
}

Integer floor_root(const Integer& value, unsigned k) {
  if (value < 0 || k == 0) throw DomainError("floor_root: bad arguments");
  Integer r;
  mpz_root(r.get_mpz_t(), value.get_mpz_t(), k);
  return r;
}

Integer ceil_root(const Integer& value, unsigned k) {
  Integer r = floor_root(value, k);
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), r.get_mpz_t(), k);
  if (p < value) r += 1;
  return r;
}

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return value.get_si();
}

Integer dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw DomainError("dot: size mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw DomainError("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer squared_norm(const IntVec& v) { return dot(v, v); }
Rational squared_norm(const RatVec& v) { return dot(v, v); }

Integer max_abs(const IntVec& v) {
  Integer m = 0;
  for (const auto& x : v) {
    Integer a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

std::vector<double> to_double(const RatVec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

std::vector<double> to_double(const IntVec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  Integer r;
  if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("not an integer: '" + std::string(text) + "'");
  return r;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace sisz
