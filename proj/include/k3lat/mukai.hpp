#pragma once

#include "k3lat/arith.hpp"
#include "k3lat/discform.hpp"
#include "k3lat/error.hpp"
#include "k3lat/glue.hpp"
#include "k3lat/lattice.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace k3lat {

/// Neron-Severi data of a K3 surface. The ample hint, when present, is only
/// used as the effectivity proxy for rank-zero Mukai vectors.
class K3Model {
 public:
  explicit K3Model(IntegralLattice ns, std::optional<Vector> ample = std::nullopt)
      : ns_(std::move(ns)), ample_(std::move(ample)) {
    if (ample_) {
      ns_.check_vector(*ample_);
      if (ns_.square(*ample_) <= 0) throw Error("invalid_argument", "ample hint must have positive square");
    }
  }

  const IntegralLattice& ns() const noexcept { return ns_; }
  const std::optional<Vector>& ample() const noexcept { return ample_; }
  std::size_t picard_rank() const noexcept { return ns_.rank(); }

 private:
  IntegralLattice ns_;
  std::optional<Vector> ample_;
};

/// v = (r, E, s) in H^0 + NS + H^4.
struct MukaiVector {
  Int r;
  Vector e;
  Int s;

  /// Coordinates in extended_ns order (r, E..., s).
  Vector coords() const {
    Vector c;
    c.reserve(e.size() + 2);
    c.push_back(r);
    c.insert(c.end(), e.begin(), e.end());
    c.push_back(s);
    return c;
  }

  static MukaiVector from_coords(const Vector& c) {
    if (c.size() < 2) throw Error("dimension_mismatch", "Mukai coordinates need at least r and s");
    return MukaiVector{c.front(), Vector(c.begin() + 1, c.end() - 1), c.back()};
  }

  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

/// N(S) = H^0 + NS(S) + H^4 with (r,l,s).(r',l',s') = l.l' - r s' - s r'.
inline IntegralLattice extended_ns(const K3Model& model) {
  const std::size_t rho = model.picard_rank();
  IntMatrix g(rho + 2, rho + 2);
  for (std::size_t i = 0; i < rho; ++i)
    for (std::size_t j = 0; j < rho; ++j) g(i + 1, j + 1) = model.ns().gram()(i, j);
  g(0, rho + 1) = -1;
  g(rho + 1, 0) = -1;
  return IntegralLattice(std::move(g), "N(S)");
}

inline void check_mukai_vector(const K3Model& model, const MukaiVector& v) {
  if (v.e.size() != model.picard_rank())
    throw Error("dimension_mismatch", "Mukai vector E has " + std::to_string(v.e.size()) +
                                          " coordinates, Picard rank is " + std::to_string(model.picard_rank()));
}

/// v^2 = E^2 - 2 r s.
inline Int mukai_square(const K3Model& model, const MukaiVector& v) {
  check_mukai_vector(model, v);
  return model.ns().square(v.e) - 2 * v.r * v.s;
}

inline void require_primitive(const K3Model& model, const MukaiVector& v) {
  check_mukai_vector(model, v);
  const Vector c = v.coords();
  if (is_zero(c) || gcd(c) != 1) throw Error("not_primitive", "Mukai vector must be primitive");
}

enum class ModuliKind { empty, point, hyperkaehler, not_covered };

inline const char* to_string(ModuliKind k) {
  switch (k) {
    case ModuliKind::empty: return "empty";
    case ModuliKind::point: return "point";
    case ModuliKind::hyperkaehler: return "hyperkaehler";
    case ModuliKind::not_covered: return "not_covered";
  }
  return "?";
}

struct ModuliExistence {
  ModuliKind kind = ModuliKind::not_covered;
  Int dimension = 0;   // v^2 + 2 whenever kind is point or hyperkaehler
  std::string reason;  // which case of the existence theorem applied
};

/// Existence and dimension of M_H(v) for generic H: empty if v^2 < -2;
/// a K3^[n]-type manifold of dimension v^2 + 2 if v^2 >= -2 and r > 0, or
/// r = 0 with E effective, or r = E = 0 with s > 0.
inline ModuliExistence moduli_exists(const K3Model& model, const MukaiVector& v) {
  require_primitive(model, v);
  const Int sq = mukai_square(model, v);
  ModuliExistence out;
  if (sq < -2) {
    out.kind = ModuliKind::empty;
    out.reason = "v^2 < -2";
    return out;
  }
  auto covered = [&](std::string reason) {
    out.kind = sq == -2 ? ModuliKind::point : ModuliKind::hyperkaehler;
    out.dimension = sq + 2;
    out.reason = std::move(reason);
  };
  if (v.r > 0) {
    covered("r > 0");
  } else if (v.r == 0 && !is_zero(v.e)) {
    if (!model.ample()) {
      out.reason = "r = 0: effectivity of E undecidable without an ample class";
    } else if (model.ns().pair(v.e, *model.ample()) > 0) {
      covered("r = 0, E.A > 0 (effective proxy)");
    } else {
      out.reason = "r = 0: E.A <= 0, E not effective";
    }
  } else if (v.r == 0 && v.s > 0) {
    covered("r = E = 0, s > 0");
  } else {
    out.reason = "outside the cases of the existence theorem";
  }
  return out;
}

/// Class of v / div(v) in A_{N(S)}.
inline DiscElement caldararu_class(const K3Model& model, const MukaiVector& v, const FiniteQuadraticForm& form) {
  require_primitive(model, v);
  const IntegralLattice n = extended_ns(model);
  const Vector c = v.coords();
  const Int div = divisibility(n, c);
  RatVector x(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) x[i] = Rational(c[i], div);
  return form.element_of(x);
}

inline DiscElement caldararu_class(const K3Model& model, const MukaiVector& v) {
  return caldararu_class(model, v, discriminant_form(extended_ns(model)));
}

/// Algebraic part of H^2(M_H(v), Z): the saturated complement of v in N(S).
inline Sublattice ns_of_moduli(const K3Model& model, const MukaiVector& v) {
  require_primitive(model, v);
  if (mukai_square(model, v) < 0) throw Error("invalid_argument", "ns_of_moduli requires v^2 >= 0");
  return orthogonal_complement(extended_ns(model), v.coords());
}

struct ModuliReport {
  MukaiVector v;
  Int v_square;
  ModuliExistence existence;
  std::optional<bool> nonempty;  // nullopt: not decided by the existence theorem
  std::optional<Int> dimension;  // v^2 + 2, absent when v^2 < -2
  std::string moduli_type;  // "K3 surface", "hyperkaehler of K3^[n]-type", ...
  Int div_v;
  bool fine = false;
  Int obstruction_order;  // order of the Caldararu class in A_{N(S)}
  Int ses_kernel_order;   // cokernel oracle on a unimodular model containing N(S)
  FiniteQuadraticForm form;             // A_{N(S)}
  FiniteQuadraticForm transcendental;   // A_{N(S)}(-1), standing in for A_{T(S)}
  DiscElement caldararu;
  DiscElement transcendental_caldararu;
  bool assumes_generic_polarisation = true;
};

/// The moduli-space verdict bundle. The obstruction order is computed three
/// independent ways: gcd of the Gram pairings (div_v), the order of v/div(v)
/// in A_{N(S)}, and the congruence-sublattice index on the unimodular double
/// of N(S).
inline ModuliReport moduli_report(const K3Model& model, const MukaiVector& v) {
  require_primitive(model, v);
  ModuliReport r;
  r.v = v;
  r.v_square = mukai_square(model, v);
  r.existence = moduli_exists(model, v);
  switch (r.existence.kind) {
    case ModuliKind::empty: r.nonempty = false; break;
    case ModuliKind::point:
    case ModuliKind::hyperkaehler: r.nonempty = true; break;
    case ModuliKind::not_covered: r.nonempty = std::nullopt; break;
  }
  if (r.v_square >= -2) r.dimension = r.v_square + 2;
  if (r.v_square == -2)
    r.moduli_type = "point";
  else if (r.v_square == 0)
    r.moduli_type = "K3 surface";
  else if (r.v_square > 0)
    r.moduli_type = "hyperkaehler of K3^[n]-type";
  else
    r.moduli_type = "empty";

  const IntegralLattice n = extended_ns(model);
  const Vector c = v.coords();
  r.div_v = divisibility(n, c);
  r.fine = r.div_v == 1;

  r.form = discriminant_form(n);
  r.transcendental = negate_form(r.form);
  r.caldararu = caldararu_class(model, v, r.form);
  r.transcendental_caldararu = r.caldararu;
  r.obstruction_order = r.form.element_order(r.caldararu);

  const UnimodularModel um = unimodular_double(n);
  r.ses_kernel_order = transcendental_cokernel(um.ambient, um.embedded, c).index;
  return r;
}

/// Basis of a U + U inside L: {e1, f1, e2, f2} with e_i.f_i = 1, all other
/// pairings zero.
using HyperbolicWitness = std::array<Vector, 4>;

inline void check_hyperbolic_witness(const IntegralLattice& lat, const HyperbolicWitness& w) {
  static constexpr int expected[4][4] = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  for (const auto& x : w) lat.check_vector(x);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (lat.pair(w[i], w[j]) != expected[i][j]) throw Error("invalid_witness", "need U+U sublattice");
}

/// Eichler criterion: with U + U inside L, primitive v and u lie in one orbit
/// of isometries acting trivially on A_L iff v^2 = u^2 and v/div(v) = u/div(u)
/// in A_L.
inline bool orbit_equivalent(const IntegralLattice& lat, const Vector& v, const Vector& u, const HyperbolicWitness& w) {
  check_hyperbolic_witness(lat, w);
  if (!is_primitive(lat, v) || !is_primitive(lat, u)) throw Error("not_primitive", "vectors must be primitive");
  if (lat.square(v) != lat.square(u)) return false;
  const FiniteQuadraticForm form = discriminant_form(lat);
  auto klass = [&](const Vector& x) {
    const Int d = divisibility(lat, x);
    RatVector q(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) q[i] = Rational(x[i], d);
    return form.element_of(q);
  };
  return klass(v) == klass(u);
}

}  // namespace k3lat
