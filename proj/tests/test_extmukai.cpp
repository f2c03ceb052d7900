#include "support.hpp"

#include <gtest/gtest.h>

using namespace k3lat;
using namespace k3lat::testing;

TEST(ExtMukai, PicGMinusOneExamples) {
  EXPECT_EQ(determinant(lambda11_picgminus1(3)), 4);
  EXPECT_EQ(determinant(lambda11_picgminus1(2)), 4);
  for (i64 g = 2; g <= 10; ++g) {
    const IntMatrix m = lambda11_picgminus1(g);
    EXPECT_EQ(m(0, 0), 0);
    EXPECT_EQ(m(0, 1), 1);
    EXPECT_EQ(m(1, 0), 1);
    EXPECT_EQ(m(1, 1), 0);
  }
}

TEST(ExtMukai, PicGExamples) {
  EXPECT_EQ(determinant(lambda11_picg(3)), 16);
  EXPECT_EQ(determinant(lambda11_picg(5)), 64);
}

TEST(ExtMukai, DerivedDistinctExamples) {
  const auto r3 = derived_distinct(3);
  EXPECT_EQ(r3.disc_m, 4);
  EXPECT_EQ(r3.disc_mprime, 16);
  EXPECT_TRUE(r3.distinct);
  EXPECT_TRUE(r3.applicable);

  const auto r2 = derived_distinct(2);
  EXPECT_EQ(r2.disc_m, 4);
  EXPECT_EQ(r2.disc_mprime, 4);
  EXPECT_FALSE(r2.distinct);
  EXPECT_FALSE(r2.applicable);

  const auto r10 = derived_distinct(10);
  EXPECT_EQ(r10.disc_m, 4);
  EXPECT_EQ(r10.disc_mprime, 324);
}

TEST(ExtMukai, GenusBelowTwoIsAnError) {
  EXPECT_THROW(derived_distinct(1), Error);
  EXPECT_THROW(lambda11_picg(0), Error);
  EXPECT_THROW(lambda11_picgminus1(-3), Error);
}

TEST(ExtMukai, DeterminantsForAllGenera) {
  for (i64 g = 2; g <= 50; ++g) {
    const auto r = derived_distinct(g);
    EXPECT_EQ(r.disc_m, 4);
    EXPECT_EQ(r.disc_mprime, (2 * g - 2) * (2 * g - 2));
    EXPECT_EQ(r.distinct, 2 * g - 2 >= 4);
    EXPECT_EQ(r.applicable, 2 * g - 2 >= 4);
  }
}

TEST(ExtMukai, DeltaBookkeeping) {
  for (i64 g = 2; g <= 50; ++g) {
    const IntMatrix m = lambda11_picgminus1(g);
    EXPECT_EQ(m(2, 2), 2 - 2 * g);
    EXPECT_EQ(m(2, 3), -2);
  }
}

TEST(ExtMukai, NsBlockMatchesModuliComplement) {
  for (i64 g = 2; g <= 12; ++g) {
    EXPECT_TRUE(derived_distinct(g).ns_block_matches);
    const Sublattice ns = ns_of_moduli(rho_one(2 * g - 2), MukaiVector{0, {1}, 1});
    EXPECT_TRUE(equal_up_to_reordering(ns_picg_block(g), ns.gram()));
  }
}

TEST(ExtMukai, BothLatticesAreEvenOfSignatureTwoTwo) {
  for (i64 g = 2; g <= 50; ++g) {
    for (const IntMatrix& m : {lambda11_picgminus1(g), lambda11_picg(g)}) {
      const IntegralLattice lat(m);
      EXPECT_EQ(lat.signature(), (Signature{2, 2, 0}));
    }
  }
}

TEST(ExtMukai, ReorderingHelper) {
  EXPECT_TRUE(equal_up_to_reordering(IntMatrix{{0, 1}, {1, 2}}, IntMatrix{{2, 1}, {1, 0}}));
  EXPECT_FALSE(equal_up_to_reordering(IntMatrix{{0, 1}, {1, 2}}, IntMatrix{{2, 1}, {1, 2}}));
}
