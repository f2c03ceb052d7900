#pragma once

#include "k3lat/arith.hpp"
#include "k3lat/error.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/matrix.hpp"
#include "k3lat/mukai.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace k3lat {

// (1,1)-parts of the extended Mukai lattices H^2(M) + U(-1) for the
// Beauville-Mukai systems M = Pic^{g-1} = M(0,H,0) and M' = Pic^g = M(0,H,1)
// on a K3 surface with Pic = Z H, H^2 = 2g - 2.

inline void require_genus(const Int& g) {
  if (g < 2) throw Error("invalid_argument", "genus must be at least 2");
}

/// NS(M') = <(0,0,1), (2g-2, H, 0)> in that order.
inline IntMatrix ns_picg_block(const Int& g) {
  require_genus(g);
  const Int h2 = 2 * g - 2;
  return IntMatrix{{0, -h2}, {-h2, h2}};
}

/// NS(M) = U, plus the classes 2 alpha + delta_M and beta with
/// (2 alpha + delta_M)^2 = delta_M^2 = 2 - 2g and (2 alpha + delta_M).beta = -2.
inline IntMatrix lambda11_picgminus1(const Int& g) {
  require_genus(g);
  const IntMatrix ns_m{{0, 1}, {1, 0}};
  const IntMatrix twisted{{2 - 2 * g, -2}, {-2, 0}};
  return block_diagonal(ns_m, twisted);
}

/// Z alpha + Z beta (a copy of U(-1)) plus NS(M').
inline IntMatrix lambda11_picg(const Int& g) {
  require_genus(g);
  const IntMatrix u_neg{{0, -1}, {-1, 0}};
  return block_diagonal(u_neg, ns_picg_block(g));
}

/// Equality of Gram matrices up to a simultaneous permutation of the basis.
inline bool equal_up_to_reordering(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || !a.is_square()) return false;
  std::vector<std::size_t> perm(a.rows());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    bool same = true;
    for (std::size_t i = 0; i < a.rows() && same; ++i)
      for (std::size_t j = 0; j < a.cols() && same; ++j) same = a(perm[i], perm[j]) == b(i, j);
    if (same) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

struct ExtMukaiReport {
  Int g;
  IntMatrix gram_m;
  IntMatrix gram_mprime;
  Int disc_m;
  Int disc_mprime;
  bool distinct = false;
  bool applicable = false;  // 2g - 2 >= 4
  bool ns_block_matches = false;  // NS(M') block equals the complement of (0,H,1) in N(S)
};

/// Decides non-derived-equivalence of Pic^{g-1} and Pic^g at the level of
/// discriminants of the (1,1)-parts.
inline ExtMukaiReport derived_distinct(const Int& g) {
  require_genus(g);
  ExtMukaiReport r;
  r.g = g;
  r.gram_m = lambda11_picgminus1(g);
  r.gram_mprime = lambda11_picg(g);
  r.disc_m = determinant(r.gram_m);
  r.disc_mprime = determinant(r.gram_mprime);
  r.distinct = r.disc_m != r.disc_mprime;
  r.applicable = 2 * g - 2 >= 4;

  const K3Model rho1(rank_one(2 * g - 2));
  const Sublattice ns_mprime = ns_of_moduli(rho1, MukaiVector{0, {1}, 1});
  r.ns_block_matches = equal_up_to_reordering(ns_picg_block(g), ns_mprime.gram());
  return r;
}

}  // namespace k3lat
