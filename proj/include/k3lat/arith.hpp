#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace k3lat {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Vector = std::vector<Int>;
using RatVector = std::vector<Rational>;

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

/// Non-negative gcd; gcd(x, 0) = |x|.
inline Int gcd(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

inline Int gcd(const Vector& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Representative of a in [0, |m|).
inline Int mod(const Int& a, const Int& m) {
  Int mm = abs(m);
  Int r = a % mm;
  if (r < 0) r += mm;
  return r;
}

inline Int floor(const Rational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline bool is_integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

inline Int to_int(const Rational& r) { return boost::multiprecision::numerator(r); }

/// Representative of r modulo m (m a positive rational) in [0, m).
inline Rational mod(const Rational& r, const Rational& m) { return r - m * Rational(floor(r / m)); }

inline Rational mod_2z(const Rational& r) { return mod(r, Rational(2)); }
inline Rational mod_z(const Rational& r) { return mod(r, Rational(1)); }

inline std::string to_string(const Int& a) { return a.str(); }

/// "p/q", or "p" when integral.
inline std::string to_string(const Rational& r) {
  if (is_integral(r)) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline RatVector to_rational(const Vector& v) { return RatVector(v.begin(), v.end()); }

inline Vector scale(const Vector& v, const Int& k) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * k;
  return out;
}

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace k3lat
