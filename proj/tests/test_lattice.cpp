#include "support.hpp"

#include <gtest/gtest.h>

using namespace k3lat;
using namespace k3lat::testing;

TEST(Lattice, RejectsBadGrams) {
  EXPECT_THROW(IntegralLattice(IntMatrix{{1, 0}, {0, 1}}), Error);
  EXPECT_THROW(IntegralLattice(IntMatrix{{0, 1}, {2, 0}}), Error);
  EXPECT_THROW(IntegralLattice(IntMatrix{{2, 2}, {2, 2}}), Error);
  EXPECT_THROW(IntegralLattice(IntMatrix(2, 3)), Error);
  try {
    IntegralLattice(IntMatrix{{3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "odd_lattice");
  }
}

TEST(Divisibility, Examples) {
  EXPECT_EQ(divisibility(u(), Vector{1, 0}), 1);
  EXPECT_EQ(divisibility(mukai_rank_one(4), Vector{0, 1, 0}), 4);
  EXPECT_EQ(divisibility(mukai_rank_one(4), Vector{0, 1, -2}), 2);
}

TEST(Divisibility, ZeroVectorIsAnError) {
  try {
    divisibility(u(), Vector{0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "zero_vector");
    EXPECT_STREQ(e.what(), "zero vector has no divisibility");
  }
  EXPECT_THROW(is_primitive(u(), Vector{0, 0}), Error);
}

TEST(Primitive, Examples) {
  EXPECT_TRUE(is_primitive(u(), Vector{1, 0}));
  EXPECT_FALSE(is_primitive(u(), Vector{2, 4}));
  EXPECT_TRUE(is_primitive(mukai_rank_one(4), Vector{0, 1, -2}));
}

TEST(Divisibility, AgreesWithDefinitionOracle) {
  Rng rng(0x1a7701);
  const std::vector<IntegralLattice> lattices{u2(), mukai_rank_one(4), mukai_rank_one(18), u_e8m(),
                                              direct_sum(rank_one(-6), u())};
  for (const auto& lat : lattices) {
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<i64> v(lat.rank());
      for (auto& x : v) x = rng.uniform(-7, 7);
      bool zero = true;
      for (auto x : v) zero = zero && x == 0;
      if (zero) continue;
      EXPECT_EQ(divisibility(lat, to_vector(v)), divisibility_oracle(lat.gram(), v));
    }
  }
}

TEST(Divisibility, ScalesWithMultiples) {
  Rng rng(0x1a7702);
  const IntegralLattice lat = mukai_rank_one(6);
  for (int trial = 0; trial < 100; ++trial) {
    Vector v = rng.vector(3, -6, 6);
    if (is_zero(v) || gcd(v) != 1) continue;
    const Int k = rng.uniform(1, 9) * (rng.uniform(0, 1) ? 1 : -1);
    EXPECT_EQ(divisibility(lat, scale(v, k)), abs(k) * divisibility(lat, v));
  }
}

TEST(Divisibility, IsometryInvariant) {
  Rng rng(0x1a7703);
  const IntegralLattice lat = direct_sum(rank_one(4), u2());
  for (int trial = 0; trial < 50; ++trial) {
    // new basis rows b_i = P e_i: Gram' = P G P^T, coordinates transform by P^-T
    const IntMatrix p = rng.unimodular(lat.rank(), 12);
    const IntegralLattice image(p * lat.gram() * p.transpose());
    const Vector v = rng.vector(lat.rank(), -4, 4);
    if (is_zero(v)) continue;
    const Vector w = to_integer(inverse(p.transpose())) * v;
    EXPECT_EQ(divisibility(lat, v), divisibility(image, w));
    EXPECT_EQ(lat.square(v), image.square(w));
  }
}

TEST(Saturate, Examples) {
  const Sublattice s(u(), {{2, 0}});
  EXPECT_EQ(saturate(s).basis(), (std::vector<Vector>{{1, 0}}));

  const auto sat = saturate_with_index(Sublattice(u(), {{1, 1}, {1, -1}}));
  EXPECT_EQ(sat.index, 2);
  EXPECT_EQ(lattice_index(sat.lattice.basis_matrix()), 1);
  EXPECT_EQ(abs(sat.lattice.det()), 1);
}

TEST(Saturate, IdempotentAndIndexMatchesDeterminants) {
  Rng rng(0x1a7704);
  const IntegralLattice lat = u3();
  for (int trial = 0; trial < 80; ++trial) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 4));
    std::vector<Vector> basis;
    for (std::size_t k = 0; k < r; ++k) basis.push_back(rng.vector(6, -4, 4));
    if (rank(IntMatrix::from_rows(basis, 6)) != r) continue;
    const Sublattice s(lat, basis);
    const auto sat = saturate_with_index(s);
    EXPECT_EQ(saturate(sat.lattice).basis(), sat.lattice.basis());
    EXPECT_TRUE(sat.lattice.is_primitive());
    // every input vector lies in the saturation
    for (const auto& b : basis) {
      const auto x = solve_integer(sat.lattice.basis_matrix().transpose(), b);
      EXPECT_TRUE(x.has_value());
    }
    // index from the inclusion: invariant factors of the coordinate matrix
    IntMatrix coords(r, r);
    for (std::size_t k = 0; k < r; ++k) {
      const auto x = *solve_integer(sat.lattice.basis_matrix().transpose(), basis[k]);
      for (std::size_t j = 0; j < r; ++j) coords(k, j) = x[j];
    }
    EXPECT_EQ(abs(determinant(coords)), sat.index);
    if (!s.is_degenerate()) EXPECT_EQ(abs(s.det()), abs(sat.lattice.det()) * sat.index * sat.index);
  }
}

TEST(Complement, Examples) {
  const Sublattice t = orthogonal_complement(Sublattice(u(), {{1, 1}}));
  ASSERT_EQ(t.rank(), 1u);
  EXPECT_TRUE(t.basis()[0] == (Vector{1, -1}) || t.basis()[0] == (Vector{-1, 1}));
  EXPECT_EQ(t.gram(), (IntMatrix{{-2}}));

  EXPECT_EQ(orthogonal_complement(Sublattice(u(), {{1, 0}, {0, 1}})).rank(), 0u);

  const Sublattice c = orthogonal_complement(mukai_rank_one(4), Vector{0, 1, 0});
  EXPECT_EQ(c.basis(), (std::vector<Vector>{{1, 0, 0}, {0, 0, 1}}));
  EXPECT_EQ(c.gram(), (IntMatrix{{0, -1}, {-1, 0}}));
}

TEST(Complement, SaturatedOrthogonalAndRankComplementary) {
  Rng rng(0x1a7705);
  for (const auto& lat : {u3(), u_e8m()}) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto r = static_cast<std::size_t>(rng.uniform(1, 3));
      const Sublattice s = rng.primitive_sublattice(lat, r, 3);
      const Sublattice t = orthogonal_complement(s);
      EXPECT_TRUE(t.is_primitive());
      EXPECT_EQ(s.rank() + t.rank(), lat.rank());
      for (const auto& a : s.basis())
        for (const auto& b : t.basis()) EXPECT_EQ(lat.pair(a, b), 0);
      // on a unimodular ambient, |disc N| = |disc N^perp|
      EXPECT_EQ(abs(s.det()), abs(t.det()));
    }
  }
}

TEST(Complement, DegenerateInputStillGivesKernel) {
  const Sublattice iso(u2(), {{1, 0, 0, 0}});
  EXPECT_TRUE(iso.is_degenerate());
  const Sublattice t = orthogonal_complement(iso);
  EXPECT_EQ(t.rank(), 3u);
  EXPECT_TRUE(t.is_degenerate());
}

TEST(Constructions, SumsAndRescaling) {
  EXPECT_EQ(u2().rank(), 4u);
  EXPECT_EQ(u2().det(), 1);
  EXPECT_EQ(rescale(u(), -1).gram(), (IntMatrix{{0, -1}, {-1, 0}}));
  EXPECT_THROW(rescale(u(), 0), Error);
  EXPECT_EQ(hyperbolic_plane(3).gram(), (IntMatrix{{0, 3}, {3, 0}}));
}

TEST(Constructions, StandardLattices) {
  EXPECT_EQ(e8().det(), 1);
  EXPECT_EQ(e8().signature(), (Signature{8, 0, 0}));
  EXPECT_EQ(e8_negative().det(), 1);
  EXPECT_EQ(e8_negative().signature(), (Signature{0, 8, 0}));

  const IntegralLattice k3 = k3_lattice();
  EXPECT_EQ(k3.rank(), 22u);
  EXPECT_EQ(k3.signature(), (Signature{3, 19, 0}));
  EXPECT_TRUE(k3.is_unimodular());

  const IntegralLattice mukai = mukai_lattice();
  EXPECT_EQ(mukai.rank(), 24u);
  EXPECT_EQ(mukai.signature(), (Signature{4, 20, 0}));

  const IntegralLattice k3n = k3n_lattice(2);
  EXPECT_EQ(k3n.rank(), 23u);
  EXPECT_EQ(k3n.gram()(22, 22), -6);
  EXPECT_EQ(k3n.det(), 6);
  EXPECT_THROW(k3n_lattice(1), Error);

  EXPECT_EQ(rank_one(4).gram(), (IntMatrix{{4}}));
  EXPECT_THROW(rank_one(3), Error);
}

TEST(Sublattice, RejectsDependentBasis) {
  EXPECT_THROW(Sublattice(u2(), {{1, 0, 0, 0}, {2, 0, 0, 0}}), Error);
  EXPECT_THROW(Sublattice(u2(), {{1, 0, 0}}), Error);
}

TEST(Sublattice, KeepsTheGivenBasis) {
  const Sublattice s(u(), {{2, 0}, {0, 1}});
  EXPECT_EQ(s.basis()[0], (Vector{2, 0}));
  EXPECT_EQ(s.gram(), (IntMatrix{{0, 2}, {2, 0}}));
  EXPECT_FALSE(s.is_primitive());
}
