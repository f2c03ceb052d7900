#pragma once

#include "k3lat/arith.hpp"
#include "k3lat/error.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/normal_form.hpp"

#include <cstddef>
#include <vector>

namespace k3lat {

/// Element of a discriminant group, in coordinates with respect to the
/// generators of its FiniteQuadraticForm: 0 <= coeffs[i] < invariant_factors[i].
struct DiscElement {
  std::vector<Int> coeffs;
  friend bool operator==(const DiscElement&, const DiscElement&) = default;
};

/// Discriminant form (A_L, q) of an even lattice L: A_L = L^* / L, with
/// q valued in Q/2Z and the bilinear pairing valued in Q/Z.
///
/// With P * G * Q = diag(d) the Smith form of the Gram matrix, generator i is
/// the i-th column of Q divided by d_i (in L (x) Q coordinates), and the
/// coordinates of a dual vector x are (P * G * x)_i mod d_i.
class FiniteQuadraticForm {
 public:
  static FiniteQuadraticForm of(const IntegralLattice& lat) {
    const auto dec = snf(lat.gram());
    FiniteQuadraticForm f;
    f.home_ = lat;
    const std::size_t n = lat.rank();
    for (std::size_t i = 0; i < n; ++i) {
      const Int& di = dec.d[i];
      if (di == 0) throw Error("degenerate", "discriminant form of a degenerate lattice");
      if (di == 1) continue;
      f.factors_.push_back(di);
      RatVector g(n);
      for (std::size_t j = 0; j < n; ++j) g[j] = Rational(dec.right(j, i), di);
      f.generators_.push_back(std::move(g));
      f.reduction_.push_back(dec.left.row(i));
    }
    f.fill_table();
    return f;
  }

  const IntegralLattice& home() const noexcept { return home_; }
  const std::vector<Int>& invariant_factors() const noexcept { return factors_; }
  const std::vector<RatVector>& generators() const noexcept { return generators_; }
  std::size_t num_generators() const noexcept { return factors_.size(); }

  Int order() const {
    Int o = 1;
    for (const auto& d : factors_) o *= d;
    return o;
  }

  bool is_trivial() const noexcept { return factors_.empty(); }

  /// Diagonal: q(g_i) in [0, 2); off-diagonal: b(g_i, g_j) in [0, 1).
  const RatMatrix& table() const noexcept { return table_; }

  DiscElement zero() const { return DiscElement{std::vector<Int>(factors_.size())}; }

  DiscElement generator(std::size_t i) const {
    DiscElement e = zero();
    e.coeffs.at(i) = 1;
    return e;
  }

  void check(const DiscElement& e) const {
    if (e.coeffs.size() != factors_.size())
      throw Error("dimension_mismatch", "element does not belong to this discriminant group");
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (e.coeffs[i] < 0 || e.coeffs[i] >= factors_[i])
        throw Error("invalid_argument", "element coefficients are not reduced");
  }

  DiscElement reduce(std::vector<Int> coeffs) const {
    if (coeffs.size() != factors_.size())
      throw Error("dimension_mismatch", "element does not belong to this discriminant group");
    for (std::size_t i = 0; i < factors_.size(); ++i) coeffs[i] = mod(coeffs[i], factors_[i]);
    return DiscElement{std::move(coeffs)};
  }

  /// Class in A_L of a vector of L^* given in L (x) Q coordinates.
  DiscElement element_of(const RatVector& x) const {
    if (x.size() != home_.rank()) throw Error("dimension_mismatch", "vector length does not match lattice rank");
    Vector y(home_.rank());
    for (std::size_t i = 0; i < home_.rank(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < home_.rank(); ++j) s += Rational(home_.gram()(i, j)) * x[j];
      if (!is_integral(s)) throw Error("not_dual", "not a dual vector");
      y[i] = to_int(s);
    }
    std::vector<Int> c(factors_.size());
    for (std::size_t k = 0; k < factors_.size(); ++k)
      for (std::size_t j = 0; j < y.size(); ++j) c[k] += reduction_[k][j] * y[j];
    return reduce(std::move(c));
  }

  DiscElement element_of(const Vector& x) const { return element_of(to_rational(x)); }

  /// Canonical rational representative sum_i coeffs[i] * g_i.
  RatVector lift(const DiscElement& e) const {
    check(e);
    RatVector x(home_.rank());
    for (std::size_t i = 0; i < factors_.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += Rational(e.coeffs[i]) * generators_[i][j];
    return x;
  }

  DiscElement add(const DiscElement& a, const DiscElement& b) const {
    check(a);
    check(b);
    std::vector<Int> c(factors_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs[i] + b.coeffs[i];
    return reduce(std::move(c));
  }

  DiscElement multiply(const Int& k, const DiscElement& a) const {
    check(a);
    std::vector<Int> c(factors_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * a.coeffs[i];
    return reduce(std::move(c));
  }

  DiscElement negate(const DiscElement& a) const { return multiply(Int(-1), a); }

  Int element_order(const DiscElement& a) const {
    check(a);
    Int o = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) o = lcm(o, factors_[i] / gcd(factors_[i], a.coeffs[i]));
    return o;
  }

  /// q(a) in [0, 2).
  Rational q(const DiscElement& a) const {
    check(a);
    Rational s = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (a.coeffs[i] == 0) continue;
      s += Rational(a.coeffs[i] * a.coeffs[i]) * table_(i, i);
      for (std::size_t j = i + 1; j < factors_.size(); ++j) s += Rational(2 * a.coeffs[i] * a.coeffs[j]) * table_(i, j);
    }
    return mod_2z(s);
  }

  /// b(a, b) in [0, 1).
  Rational pairing(const DiscElement& a, const DiscElement& b) const {
    check(a);
    check(b);
    Rational s = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      for (std::size_t j = 0; j < factors_.size(); ++j) s += Rational(a.coeffs[i] * b.coeffs[j]) * table_(i, j);
    return mod_z(s);
  }

  /// Every element, in lexicographic coefficient order.
  std::vector<DiscElement> elements() const {
    std::vector<DiscElement> out;
    DiscElement cur = zero();
    for (;;) {
      out.push_back(cur);
      std::size_t i = 0;
      while (i < factors_.size()) {
        if (++cur.coeffs[i] < factors_[i]) break;
        cur.coeffs[i] = 0;
        ++i;
      }
      if (i == factors_.size()) break;
    }
    return out;
  }

  /// Same group, all values negated: the discriminant form of home(-1) with
  /// the same generators in L (x) Q.
  FiniteQuadraticForm negated() const {
    FiniteQuadraticForm f;
    f.home_ = rescale(home_, -1);
    f.factors_ = factors_;
    f.generators_ = generators_;
    f.reduction_ = reduction_;
    for (auto& row : f.reduction_)
      for (auto& x : row) x = -x;
    f.fill_table();
    return f;
  }

 private:
  void fill_table() {
    const std::size_t k = factors_.size();
    table_ = RatMatrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const Rational v = home_.pair(generators_[i], generators_[j]);
        table_(i, j) = i == j ? mod_2z(v) : mod_z(v);
      }
  }

  IntegralLattice home_;
  std::vector<Int> factors_;
  std::vector<RatVector> generators_;
  std::vector<Vector> reduction_;
  RatMatrix table_;
};

inline FiniteQuadraticForm discriminant_form(const IntegralLattice& lat) { return FiniteQuadraticForm::of(lat); }

inline FiniteQuadraticForm negate_form(const FiniteQuadraticForm& f) { return f.negated(); }

/// Order of the subgroup of g generated by the given elements.
inline Int subgroup_order(const FiniteQuadraticForm& g, const std::vector<DiscElement>& gens) {
  const std::size_t m = g.num_generators();
  if (m == 0) return 1;
  // relations: the images plus d_j e_j; the cokernel of their span is Z^m / (span)
  IntMatrix rel(gens.size() + m, m);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < m; ++j) rel(i, j) = gens[i].coeffs[j];
  for (std::size_t j = 0; j < m; ++j) rel(gens.size() + j, j) = g.invariant_factors()[j];
  return g.order() / lattice_index(rel);
}

/// Whether generator_i(f) -> images[i] defines a group isomorphism f -> g with
/// q_g(image) = -q_f(source). Checked on generator values and pairwise pairings,
/// which determine q on every element.
inline bool forms_anti_isometric_elementwise(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g,
                                             const std::vector<DiscElement>& images) {
  if (images.size() != f.num_generators())
    throw Error("not_homomorphic", "image list length differs from the number of generators");
  for (std::size_t i = 0; i < images.size(); ++i) {
    g.check(images[i]);
    if (g.multiply(f.invariant_factors()[i], images[i]) != g.zero())
      throw Error("not_homomorphic", "image of generator " + std::to_string(i) + " has order not dividing " +
                                         f.invariant_factors()[i].str());
  }
  if (f.order() != g.order()) return false;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (g.q(images[i]) != mod_2z(-f.table()(i, i))) return false;
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (g.pairing(images[i], images[j]) != mod_z(-f.table()(i, j))) return false;
  }
  return subgroup_order(g, images) == g.order();
}

}  // namespace k3lat
