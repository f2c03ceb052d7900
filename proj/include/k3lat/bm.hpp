#pragma once

#include "k3lat/arith.hpp"
#include "k3lat/discform.hpp"
#include "k3lat/error.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/mukai.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace k3lat {

/// A K3 surface with a primitive curve class H of genus g >= 2, the setting of
/// the Beauville-Mukai systems Pic^d = M(0, H, d + 1 - g).
class BmConfig {
 public:
  BmConfig(K3Model model, Vector h) : model_(std::move(model)), h_(std::move(h)) {
    const IntegralLattice& ns = model_.ns();
    ns.check_vector(h_);
    if (is_zero(h_) || gcd(h_) != 1) throw Error("not_primitive", "H must be primitive in NS");
    const Int h2 = ns.square(h_);
    if (h2 <= 0) throw Error("invalid_argument", "H must have positive square");
    g_ = h2 / 2 + 1;
    div_h_ = divisibility(ns, h_);
    const Int in_n = divisibility(extended_ns(model_), MukaiVector{0, h_, 0}.coords());
    if (in_n != div_h_) throw Error("internal", "div(H) differs between NS and N(S)");
  }

  const K3Model& model() const noexcept { return model_; }
  const IntegralLattice& ns() const noexcept { return model_.ns(); }
  const Vector& h() const noexcept { return h_; }
  const Int& genus() const noexcept { return g_; }
  const Int& div_h() const noexcept { return div_h_; }

 private:
  K3Model model_;
  Vector h_;
  Int g_;
  Int div_h_;
};

/// v_d = (0, H, d + 1 - g).
inline MukaiVector v_d(const BmConfig& c, const Int& d) { return MukaiVector{0, c.h(), d + 1 - c.genus()}; }

/// div(v_d) = gcd(div(H), d + 1 - g), cross-checked against the Gram computation in N(S).
inline Int div_vd(const BmConfig& c, const Int& d) {
  const Int by_formula = gcd(c.div_h(), d + 1 - c.genus());
  const Int by_gram = divisibility(extended_ns(c.model()), v_d(c, d).coords());
  if (by_formula != by_gram) throw Error("internal", "div(v_d) formula disagrees with the Gram matrix");
  return by_formula;
}

/// Order of the cyclic kernel of Sha(S,H) -> Br(Pic^d).
inline Int sha_kernel_order(const BmConfig& c, const Int& d) { return c.div_h() / div_vd(c, d); }

/// zeta_H(a) = a.H mod div(H) for a class of A_NS.
inline Int zeta_h(const BmConfig& c, const FiniteQuadraticForm& ns_form, const DiscElement& a) {
  const RatVector x = ns_form.lift(a);
  const RatVector h = to_rational(c.h());
  const Rational value = c.ns().pair(x, h);
  if (!is_integral(value)) throw Error("not_dual", "class does not pair integrally with H");
  const Int z = mod(to_int(value), c.div_h());
  // shifting the representative by a lattice vector must not change the value
  RatVector shifted = x;
  if (!shifted.empty()) {
    shifted[0] += 1;
    const Rational other = c.ns().pair(shifted, h);
    if (mod(to_int(other), c.div_h()) != z) throw Error("internal", "zeta_H is not well defined");
  }
  return z;
}

namespace detail {

/// Visits every vector of [-bound, bound]^n in lexicographic order (ascending
/// when ascending is set, descending otherwise) until visit returns true.
inline std::optional<Vector> search_box(std::size_t n, const Int& bound, bool ascending,
                                        const std::function<bool(const Vector&)>& visit) {
  if (bound < 0) return std::nullopt;
  const Int start = ascending ? Int(-bound) : bound;
  const Int step = ascending ? 1 : -1;
  Vector cur(n, start);
  for (;;) {
    if (visit(cur)) return cur;
    std::size_t i = n;
    for (;;) {
      if (i == 0) return std::nullopt;
      --i;
      if (cur[i] != -start) {
        cur[i] += step;
        break;
      }
      cur[i] = start;
    }
  }
}

/// Visits the vectors of [-bound, bound]^n shell by shell (sup-norm 1, 2, ...),
/// each shell in lexicographic order, so a hit does not depend on the bound.
inline std::optional<Vector> search_shells(std::size_t n, const Int& bound, bool ascending,
                                           const std::function<bool(const Vector&)>& visit) {
  for (Int radius = 1; radius <= bound; ++radius) {
    auto hit = search_box(n, radius, ascending, [&](const Vector& v) {
      Int sup = 0;
      for (const auto& x : v) sup = std::max(sup, abs(x));
      return sup == radius && visit(v);
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

}  // namespace detail

/// A divisor D with div(D) = D.H > 0 and max |D_i| <= bound, searched by
/// increasing sup-norm, each shell in ascending lexicographic order.
inline std::optional<Vector> find_dual_divisor(const BmConfig& c, const Int& bound) {
  const IntegralLattice& ns = c.ns();
  return detail::search_shells(ns.rank(), bound, true, [&](const Vector& d) {
    const Int dh = ns.pair(d, c.h());
    return dh > 0 && divisibility(ns, d) == dh;
  });
}

/// [Pic^d] in Sha(S,H), through its zeta_H value -d mod div(H).
struct TorsorClass {
  Int d;
  Int zeta_value;
  Int order;                                // div(H) / gcd(div(H), d)
  std::optional<Vector> divisor;            // D with div(D) = D.H, when found
  std::optional<DiscElement> representative;  // class of -d D / div(D) in A_NS
};

inline TorsorClass torsor_class(const BmConfig& c, const Int& d, const Int& bound) {
  TorsorClass t;
  t.d = d;
  t.zeta_value = mod(-d, c.div_h());
  t.order = c.div_h() / gcd(c.div_h(), d);
  t.divisor = find_dual_divisor(c, bound);
  if (t.divisor) {
    const Int div_d = divisibility(c.ns(), *t.divisor);
    RatVector x(t.divisor->size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = Rational(-d * (*t.divisor)[i], div_d);
    t.representative = discriminant_form(c.ns()).element_of(x);
  }
  return t;
}

/// Pic^d and Pic^e have isomorphic generic fibres as torsors.
inline bool torsor_equivalent(const BmConfig& c, const Int& d, const Int& e) { return mod(d - e, c.div_h()) == 0; }

/// Exponent k with image([Pic^e]) = alpha_d^k in Br(Pic^d): e mod div(v_d).
inline Int obstruction_image_exponent(const BmConfig& c, const Int& d, const Int& e) { return mod(e, div_vd(c, d)); }

/// An isotropic primitive F in NS of divisibility 1 (an elliptic fibration with
/// a section). Searched by increasing sup-norm shells, each in descending
/// lexicographic order; nullopt means inconclusive, never "no".
inline std::optional<Vector> elliptic_with_section(const IntegralLattice& ns, const Int& bound) {
  return detail::search_shells(ns.rank(), bound, false, [&](const Vector& f) {
    return gcd(f) == 1 && ns.square(f) == 0 && divisibility(ns, f) == 1;
  });
}

struct BirationalityCertificate {
  Int d;
  Int e;
  Vector fibre_class;  // witness F for U inside NS
  Int gcd_d;           // gcd(div H, d + 1 - g)
  Int gcd_e;
  DiscElement class_d;  // Caldararu classes in A_{N(S)}
  DiscElement class_e;
  DiscElement h_over_div_d;  // class of H / div(v_d)
  DiscElement h_over_div_e;
  Int obstruction_order_d;
  Int obstruction_order_e;
  bool birational = false;
};

/// Pic^d and Pic^e over an elliptic K3 with a section are birational iff
/// gcd(div H, d+1-g) = gcd(div H, e+1-g).
inline BirationalityCertificate bm_birational(const BmConfig& c, const Int& d, const Int& e, const Int& bound) {
  const auto f = elliptic_with_section(c.ns(), bound);
  if (!f) throw Error("hypothesis", "theorem hypothesis not verified: no U inside NS found within the search bound");
  BirationalityCertificate cert;
  cert.d = d;
  cert.e = e;
  cert.fibre_class = *f;
  cert.gcd_d = div_vd(c, d);
  cert.gcd_e = div_vd(c, e);

  const FiniteQuadraticForm form = discriminant_form(extended_ns(c.model()));
  cert.class_d = caldararu_class(c.model(), v_d(c, d), form);
  cert.class_e = caldararu_class(c.model(), v_d(c, e), form);
  auto h_class = [&](const Int& div) {
    RatVector x(c.ns().rank() + 2);
    for (std::size_t i = 0; i < c.h().size(); ++i) x[i + 1] = Rational(c.h()[i], div);
    return form.element_of(x);
  };
  cert.h_over_div_d = h_class(cert.gcd_d);
  cert.h_over_div_e = h_class(cert.gcd_e);
  cert.obstruction_order_d = form.element_order(cert.class_d);
  cert.obstruction_order_e = form.element_order(cert.class_e);
  cert.birational = cert.gcd_d == cert.gcd_e;
  return cert;
}

}  // namespace k3lat
