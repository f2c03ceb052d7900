#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles use
// plain 64-bit arithmetic and std::gcd so they share no code with the library.

#include "k3lat/k3lat.hpp"

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace k3lat::testing {

using i64 = std::int64_t;

inline IntegralLattice u() { return hyperbolic_plane(); }
inline IntegralLattice u2() { return direct_sum(u(), u()); }
inline IntegralLattice u3() { return direct_sum({u(), u(), u()}); }
inline IntegralLattice u_e8m() { return direct_sum(u(), e8_negative()); }

/// <4> + U in Mukai coordinates (r, H, s).
inline IntegralLattice mukai_rank_one(i64 h2) {
  return IntegralLattice(IntMatrix{{0, 0, -1}, {0, h2, 0}, {-1, 0, 0}});
}

inline K3Model rho_one(i64 h2) { return K3Model(rank_one(h2), Vector{1}); }

inline i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }

/// Invariant factors of a 2x2 integer matrix from determinantal divisors.
inline std::vector<i64> snf_2x2_oracle(i64 a, i64 b, i64 c, i64 d) {
  const i64 d1 = gcd64(gcd64(a, b), gcd64(c, d));
  const i64 det = a * d - b * c;
  if (d1 == 0) return {0, 0};
  return {d1, (det < 0 ? -det : det) / d1};
}

/// Divisibility straight from the definition: gcd of the pairings with the basis.
inline i64 divisibility_oracle(const IntMatrix& gram, const std::vector<i64>& v) {
  i64 g = 0;
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    i64 s = 0;
    for (std::size_t j = 0; j < gram.cols(); ++j) s += static_cast<i64>(gram(i, j)) * v[j];
    g = gcd64(g, s);
  }
  return g;
}

inline Vector to_vector(const std::vector<i64>& v) { return Vector(v.begin(), v.end()); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  i64 uniform(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(engine_); }

  Vector vector(std::size_t n, i64 lo, i64 hi) {
    Vector v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  IntMatrix matrix(std::size_t rows, std::size_t cols, i64 lo, i64 hi) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

  /// Product of random elementary matrices.
  IntMatrix unimodular(std::size_t n, int steps) {
    IntMatrix p = IntMatrix::identity(n);
    if (n < 2) return p;
    for (int s = 0; s < steps; ++s) {
      const auto i = static_cast<std::size_t>(uniform(0, static_cast<i64>(n) - 1));
      auto j = static_cast<std::size_t>(uniform(0, static_cast<i64>(n) - 2));
      if (j >= i) ++j;
      p.add_row(i, j, uniform(-2, 2));
      if (uniform(0, 5) == 0) p.swap_rows(i, j);
    }
    return p;
  }

  /// Random primitive, non-degenerate sublattice with coefficients in [-box, box].
  Sublattice primitive_sublattice(const IntegralLattice& lat, std::size_t rank, i64 box) {
    for (;;) {
      std::vector<Vector> basis;
      for (std::size_t k = 0; k < rank; ++k) basis.push_back(vector(lat.rank(), -box, box));
      if (k3lat::rank(IntMatrix::from_rows(basis, lat.rank())) != rank) continue;
      Sublattice s = saturate(Sublattice(lat, basis));
      if (!s.is_degenerate()) return s;
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace k3lat::testing
