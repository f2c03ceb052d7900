#pragma once

#include "k3lat/arith.hpp"
#include "k3lat/error.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/normal_form.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace k3lat {

/// Even, non-degenerate integral lattice given by its Gram matrix.
/// Vectors are integer coordinate columns; pairing is x^T * gram * y.
class IntegralLattice {
 public:
  IntegralLattice() = default;

  explicit IntegralLattice(IntMatrix gram, std::string label = {})
      : gram_(std::move(gram)), label_(std::move(label)) {
    if (!gram_.is_square()) throw Error("not_square", "Gram matrix must be square");
    if (!gram_.is_symmetric()) throw Error("not_symmetric", "Gram matrix must be symmetric");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      if (gram_(i, i) % 2 != 0) throw Error("odd_lattice", "lattice must be even (odd diagonal entry)");
    det_ = determinant(gram_);
    if (det_ == 0) throw Error("degenerate", "Gram matrix is degenerate (determinant 0)");
  }

  std::size_t rank() const noexcept { return gram_.rows(); }
  const IntMatrix& gram() const noexcept { return gram_; }
  const std::string& label() const noexcept { return label_; }
  const Int& det() const noexcept { return det_; }
  bool is_unimodular() const { return abs(det_) == 1; }
  Signature signature() const { return k3lat::signature(gram_); }

  IntegralLattice with_label(std::string label) const {
    IntegralLattice out = *this;
    out.label_ = std::move(label);
    return out;
  }

  void check_vector(const Vector& v) const {
    if (v.size() != rank())
      throw Error("dimension_mismatch", "vector has " + std::to_string(v.size()) + " coordinates, lattice has rank " +
                                            std::to_string(rank()));
  }

  Int pair(const Vector& x, const Vector& y) const {
    check_vector(x);
    check_vector(y);
    Int s = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j) s += x[i] * gram_(i, j) * y[j];
    }
    return s;
  }

  Rational pair(const RatVector& x, const RatVector& y) const {
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) s += x[i] * Rational(gram_(i, j)) * y[j];
    return s;
  }

  Int square(const Vector& x) const { return pair(x, x); }

  /// gram * v: the functional u -> u.v in dual coordinates.
  Vector functional(const Vector& v) const {
    check_vector(v);
    return gram_ * v;
  }

  friend bool operator==(const IntegralLattice& a, const IntegralLattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  std::string label_;
  Int det_ = 1;
};

/// div(v) = gcd of the pairings of v with every lattice vector.
inline Int divisibility(const IntegralLattice& lat, const Vector& v) {
  lat.check_vector(v);
  if (is_zero(v)) throw Error("zero_vector", "zero vector has no divisibility");
  return gcd(lat.functional(v));
}

inline bool is_primitive(const IntegralLattice& lat, const Vector& v) {
  lat.check_vector(v);
  if (is_zero(v)) throw Error("zero_vector", "zero vector is not primitive");
  return gcd(v) == 1;
}

/// A sublattice given by a Q-linearly independent list of ambient vectors.
/// The restricted Gram matrix may be degenerate.
class Sublattice {
 public:
  Sublattice() = default;

  Sublattice(IntegralLattice home, std::vector<Vector> basis) : home_(std::move(home)), basis_(std::move(basis)) {
    for (const auto& b : basis_) home_.check_vector(b);
    if (!basis_.empty() && k3lat::rank(basis_matrix()) != basis_.size())
      throw Error("dependent_basis", "sublattice basis is not linearly independent");
    gram_ = IntMatrix(basis_.size(), basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < basis_.size(); ++j) gram_(i, j) = home_.pair(basis_[i], basis_[j]);
  }

  const IntegralLattice& home() const noexcept { return home_; }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  const IntMatrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return basis_.size(); }

  /// Rows are the basis vectors.
  IntMatrix basis_matrix() const { return IntMatrix::from_rows(basis_, home_.rank()); }

  Int det() const { return determinant(gram_); }
  bool is_degenerate() const { return det() == 0; }

  /// The sublattice as an abstract lattice in its own basis.
  IntegralLattice as_lattice(std::string label = {}) const { return IntegralLattice(gram_, std::move(label)); }

  /// Ambient coordinates of sum_k coords[k] * basis[k].
  Vector embed(const Vector& coords) const {
    if (coords.size() != rank()) throw Error("dimension_mismatch", "coordinate count does not match sublattice rank");
    Vector out(home_.rank());
    for (std::size_t k = 0; k < rank(); ++k)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += coords[k] * basis_[k][i];
    return out;
  }

  RatVector embed(const RatVector& coords) const {
    if (coords.size() != rank()) throw Error("dimension_mismatch", "coordinate count does not match sublattice rank");
    RatVector out(home_.rank());
    for (std::size_t k = 0; k < rank(); ++k)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += coords[k] * Rational(basis_[k][i]);
    return out;
  }

  bool is_primitive() const;

 private:
  IntegralLattice home_;
  std::vector<Vector> basis_;
  IntMatrix gram_;
};

struct Saturation {
  Sublattice lattice;
  Int index = 1;  // [saturation : input]
};

/// (span_Q(S) cap home) with a canonical HNF basis, together with the index of
/// the input inside it.
inline Saturation saturate_with_index(const Sublattice& s) {
  if (s.rank() == 0) return {s, 1};
  const auto dec = snf(s.basis_matrix());
  // B = left^-1 * D * right^-1, so the rows of right^-1 beyond the rank lie outside the span
  const IntMatrix right_inv = to_integer(inverse(dec.right));
  IntMatrix sat(s.rank(), s.home().rank());
  Int index = 1;
  for (std::size_t k = 0; k < s.rank(); ++k) {
    index *= dec.d[k];
    for (std::size_t j = 0; j < sat.cols(); ++j) sat(k, j) = right_inv(k, j);
  }
  return {Sublattice(s.home(), hnf_rows(sat).to_rows()), index};
}

inline Sublattice saturate(const Sublattice& s) { return saturate_with_index(s).lattice; }

inline bool Sublattice::is_primitive() const { return saturate_with_index(*this).index == 1; }

/// {x in home : x.s = 0 for all s in S}, saturated, with HNF basis.
inline Sublattice orthogonal_complement(const Sublattice& s) {
  const std::size_t n = s.home().rank();
  if (s.rank() == 0) {
    std::vector<Vector> all;
    for (std::size_t i = 0; i < n; ++i) {
      Vector e(n);
      e[i] = 1;
      all.push_back(std::move(e));
    }
    return Sublattice(s.home(), std::move(all));
  }
  const IntMatrix conditions = s.basis_matrix() * s.home().gram();
  return Sublattice(s.home(), integer_kernel(conditions).to_rows());
}

/// Orthogonal complement inside the ambient lattice of a single vector.
inline Sublattice orthogonal_complement(const IntegralLattice& lat, const Vector& v) {
  return orthogonal_complement(Sublattice(lat, {v}));
}

inline IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b) {
  std::string label;
  if (!a.label().empty() && !b.label().empty()) label = a.label() + "+" + b.label();
  return IntegralLattice(block_diagonal(a.gram(), b.gram()), std::move(label));
}

inline IntegralLattice direct_sum(const std::vector<IntegralLattice>& parts) {
  if (parts.empty()) return IntegralLattice(IntMatrix(0, 0));
  IntegralLattice out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = direct_sum(out, parts[i]);
  return out;
}

inline IntegralLattice rescale(const IntegralLattice& a, const Int& k) {
  if (k == 0) throw Error("invalid_argument", "cannot rescale a lattice by 0");
  std::string label = a.label().empty() ? std::string{} : a.label() + "(" + k.str() + ")";
  return IntegralLattice(k * a.gram(), std::move(label));
}

// Standard lattices.

inline IntegralLattice hyperbolic_plane() { return IntegralLattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }

/// U(k)
inline IntegralLattice hyperbolic_plane(const Int& k) {
  if (k == 0) throw Error("invalid_argument", "U(0) is degenerate");
  return IntegralLattice(IntMatrix{{0, k}, {k, 0}}, "U(" + k.str() + ")");
}

/// Positive-definite E8 (Cartan matrix, Bourbaki labelling).
inline IntegralLattice e8() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  const std::pair<int, int> edges[] = {{0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
  for (auto [a, b] : edges) {
    g(a, b) = -1;
    g(b, a) = -1;
  }
  return IntegralLattice(std::move(g), "E8");
}

inline IntegralLattice e8_negative() { return rescale(e8(), -1).with_label("E8(-1)"); }

/// Rank-one lattice <m>, m even.
inline IntegralLattice rank_one(const Int& m) {
  if (m == 0) throw Error("degenerate", "<0> is degenerate");
  if (m % 2 != 0) throw Error("odd_lattice", "<" + m.str() + "> is odd");
  IntMatrix g(1, 1);
  g(0, 0) = m;
  return IntegralLattice(std::move(g), "<" + m.str() + ">");
}

/// H^2 lattice of a K3 surface: U^3 + E8(-1)^2.
inline IntegralLattice k3_lattice() {
  const auto u = hyperbolic_plane();
  const auto e = e8_negative();
  return direct_sum({u, u, u, e, e}).with_label("K3");
}

/// Mukai lattice: U^4 + E8(-1)^2.
inline IntegralLattice mukai_lattice() {
  return direct_sum(hyperbolic_plane(), k3_lattice()).with_label("Mukai");
}

/// U^3 + E8(-1)^2 + <-2n-2>, the "K3n" standard lattice.
inline IntegralLattice k3n_lattice(const Int& n) {
  if (n < 2) throw Error("invalid_argument", "K3n requires n >= 2");
  return direct_sum(k3_lattice(), rank_one(-2 * n - 2)).with_label("K3n(" + n.str() + ")");
}

}  // namespace k3lat
