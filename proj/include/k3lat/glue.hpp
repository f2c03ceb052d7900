#pragma once

#include "k3lat/arith.hpp"
#include "k3lat/discform.hpp"
#include "k3lat/error.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/normal_form.hpp"

#include <cstddef>
#include <vector>

namespace k3lat {

/// Gluing data of a primitive sublattice N of a unimodular lattice L and its
/// complement T: the map A_T -> A_N sending the class of lambda in T^* to the
/// class of x - lambda, where x in L satisfies x.t = lambda.t on T.
struct GlueReport {
  Sublattice n;  // saturated
  Sublattice t;  // N^perp
  FiniteQuadraticForm form_n;
  FiniteQuadraticForm form_t;
  std::vector<DiscElement> images;     // images of the A_T generators in A_N
  std::vector<Vector> lifts;           // the x in L used for each generator
  bool isomorphism = false;            // group isomorphism A_T -> A_N
  bool anti_isometric = false;         // q_N(image) = -q_T(source) elementwise
};

namespace detail {

/// Coordinates in the basis of s of an ambient rational vector lying in span(s).
inline RatVector coordinates_in(const Sublattice& s, const RatVector& x) {
  const RatMatrix gram_inv = inverse(s.gram());
  RatVector rhs(s.rank());
  for (std::size_t k = 0; k < s.rank(); ++k) rhs[k] = s.home().pair(to_rational(s.basis()[k]), x);
  RatVector c = gram_inv * rhs;
  if (s.embed(c) != x) throw Error("invalid_argument", "vector does not lie in the span of the sublattice");
  return c;
}

}  // namespace detail

inline GlueReport glue_check(const IntegralLattice& lat, const Sublattice& input) {
  if (!lat.is_unimodular()) throw Error("not_unimodular", "glue check requires unimodular ambient");
  if (!(input.home() == lat)) throw Error("invalid_argument", "sublattice lives in a different lattice");
  GlueReport r;
  r.n = saturate(input);
  if (r.n.is_degenerate()) throw Error("degenerate", "glue check requires a non-degenerate sublattice");
  r.t = orthogonal_complement(r.n);
  r.form_n = discriminant_form(r.n.as_lattice());
  r.form_t = discriminant_form(r.t.as_lattice());

  const IntMatrix conditions = r.t.basis_matrix() * lat.gram();
  for (const auto& lambda_t : r.form_t.generators()) {
    const RatVector lambda = r.t.embed(lambda_t);
    // lambda.t_k = (Gram_T * lambda_t)_k is integral because lambda_t is in T^*
    Vector target(r.t.rank());
    for (std::size_t k = 0; k < r.t.rank(); ++k) {
      Rational s = 0;
      for (std::size_t j = 0; j < r.t.rank(); ++j) s += Rational(r.t.gram()(k, j)) * lambda_t[j];
      target[k] = to_int(s);
    }
    const auto x = solve_integer(conditions, target);
    if (!x) throw Error("internal", "no lift x in L with x.t = lambda.t; ambient is not unimodular");
    RatVector diff(lat.rank());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = Rational((*x)[i]) - lambda[i];
    r.images.push_back(r.form_n.element_of(detail::coordinates_in(r.n, diff)));
    r.lifts.push_back(*x);
  }

  r.isomorphism = r.form_n.order() == r.form_t.order() && subgroup_order(r.form_n, r.images) == r.form_n.order();
  r.anti_isometric = forms_anti_isometric_elementwise(r.form_t, r.form_n, r.images);
  return r;
}

/// Oracle for 0 -> T'(M) -> T^* -> Z/div(v) -> 0 on an explicit unimodular model:
/// the congruence sublattice {x in L : x.v = 0 mod d} has index d = div_N(v) in L.
struct CokernelReport {
  Int divisibility;        // div of v inside N
  Int index;               // [L : {x : x.v = 0 mod d}]
  Vector ambient_v;        // v in L coordinates
  Vector generator;        // u in L with u.v = 1 mod d
  Int generator_pairing;   // u.v
  bool contains_n = false; // N lies inside the congruence sublattice
  bool consistent = false; // index == divisibility && contains_n && u.v = 1 mod d
};

inline CokernelReport transcendental_cokernel(const IntegralLattice& lat, const Sublattice& n, const Vector& v) {
  if (!lat.is_unimodular()) throw Error("not_unimodular", "cokernel oracle requires unimodular ambient");
  if (!(n.home() == lat)) throw Error("invalid_argument", "sublattice lives in a different lattice");
  if (!n.is_primitive()) throw Error("not_primitive", "sublattice must be primitive in the ambient lattice");
  if (v.size() != n.rank()) throw Error("dimension_mismatch", "v must be given in sublattice coordinates");
  if (is_zero(v)) throw Error("zero_vector", "zero vector has no divisibility");
  if (gcd(v) != 1) throw Error("not_primitive", "v must be primitive in the sublattice");

  CokernelReport r;
  r.divisibility = gcd(n.gram() * v);
  if (r.divisibility == 0) throw Error("degenerate", "v pairs trivially with the sublattice");
  r.ambient_v = n.embed(v);
  const Vector functional = lat.functional(r.ambient_v);
  const std::size_t dim = lat.rank();

  // {(x, t) : functional.x + d t = 0} projects onto the congruence sublattice
  IntMatrix row(1, dim + 1);
  for (std::size_t j = 0; j < dim; ++j) row(0, j) = functional[j];
  row(0, dim) = r.divisibility;
  const IntMatrix lifted = integer_kernel(row);
  IntMatrix gens(lifted.rows(), dim);
  for (std::size_t i = 0; i < lifted.rows(); ++i)
    for (std::size_t j = 0; j < dim; ++j) gens(i, j) = lifted(i, j);
  r.index = lattice_index(gens);

  r.contains_n = true;
  for (const auto& b : n.basis())
    if (mod(lat.pair(b, r.ambient_v), r.divisibility) != 0) r.contains_n = false;

  IntMatrix functional_row(1, dim);
  for (std::size_t j = 0; j < dim; ++j) functional_row(0, j) = functional[j];
  const auto u = solve_integer(functional_row, Vector{1});
  if (!u) throw Error("internal", "v is not of divisibility 1 in the unimodular ambient");
  r.generator = *u;
  r.generator_pairing = lat.pair(r.generator, r.ambient_v);
  r.consistent = r.index == r.divisibility && r.contains_n && mod(r.generator_pairing - 1, r.divisibility) == 0;
  return r;
}

/// Even unimodular lattice containing N primitively: the overlattice of
/// N + N(-1) glued along the diagonal of A_N. In the basis
/// {(n_j, 0)} + {(f_i, f_i)}, with f_i the dual basis of N^*, its Gram matrix is
/// [[G, I], [I, 0]], and N is spanned by the first rank(N) basis vectors.
struct UnimodularModel {
  IntegralLattice ambient;
  Sublattice embedded;
};

inline UnimodularModel unimodular_double(const IntegralLattice& n) {
  const std::size_t k = n.rank();
  IntMatrix g(2 * k, 2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) g(i, j) = n.gram()(i, j);
    g(i, k + i) = 1;
    g(k + i, i) = 1;
  }
  IntegralLattice ambient(std::move(g), n.label().empty() ? std::string{} : "double(" + n.label() + ")");
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < k; ++i) {
    Vector e(2 * k);
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  Sublattice embedded(ambient, std::move(basis));
  return {std::move(ambient), std::move(embedded)};
}

}  // namespace k3lat
