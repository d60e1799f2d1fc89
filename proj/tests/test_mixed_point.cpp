#include <gtest/gtest.h>

#include "hecat/mixed_point.hpp"
#include "hecat/sampling.hpp"

using namespace hecat;

namespace {

QMatrix swap2() {
  QMatrix t(2, 2);
  t(0, 1) = 1;
  t(1, 0) = 1;
  return t;
}

MixedObject swap_object(int level = 1) {
  Bigraded v;
  v.set_entry({0, 0}, 2);
  return MixedObject(v, {{Bidegree{0, 0}, swap2()}}, level);
}

MixedObject rank_one(int g, int level = 1) {
  return MixedObject(Bigraded::line(g, g), {{Bidegree{g, g}, QMatrix::identity(1)}}, level);
}

std::size_t h_at(const Bigraded& v, int c) {
  std::size_t total = 0;
  for (const auto& [b, d] : cohomology_dims(v))
    if (b.c == c) total += d;
  return total;
}

}  // namespace

TEST(MixedObject, ValidatesTheta) {
  Bigraded v = Bigraded::line(0, 0);
  QMatrix two = QMatrix::identity(1).scaled(Rational(2));
  EXPECT_THROW(MixedObject(v, {{Bidegree{0, 0}, two}}, 1), InvalidObject);
  EXPECT_THROW(MixedObject(v, {}, 1), InvalidObject);
  EXPECT_THROW(MixedObject(v, {{Bidegree{0, 0}, QMatrix::identity(1)}}, 0), BadLevels);
  EXPECT_EQ(swap_object().order(), 2);
}

TEST(Gr, ForgetsTheta) {
  EXPECT_EQ(gr(MixedObject::unit()), Bigraded::unit());
  MixedObject s = swap_object();
  EXPECT_EQ(gr(s).dim({0, 0}), 2u);
  QMatrix jordan = QMatrix::identity(2);
  jordan(0, 1) = 1;
  MixedObject j(gr(s), {{Bidegree{0, 0}, jordan}}, 1);
  MixedObject id(gr(s), {{Bidegree{0, 0}, QMatrix::identity(2)}}, 1);
  EXPECT_EQ(gr(j), gr(id));
}

TEST(TateTwist, ShiftsWeightByTwiceK) {
  MixedObject t = tate_twist(MixedObject::unit(), Rational(-1, 2));
  EXPECT_EQ(gr(t).graded_degrees(), std::vector<int>{1});
  EXPECT_EQ(gr(tate_twist(swap_object(), 0)), gr(swap_object()));
  EXPECT_THROW(tate_twist(MixedObject::unit(), Rational(1, 3)), NonHalfIntegerTwist);
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    MixedObject m = random_mixed(rng).object;
    EXPECT_EQ(gr(tate_twist(m, 1)), shift_gr(gr(m), 2));
  }
}

TEST(HomEnriched, Examples) {
  MixedObject u = MixedObject::unit();
  MixedObject h = hom_enriched(u, u);
  EXPECT_EQ(gr(h), Bigraded::unit());
  EXPECT_EQ(h.theta({0, 0}), QMatrix::identity(1));

  MixedObject s = hom_enriched(swap_object(), swap_object());
  EXPECT_EQ(gr(s).dim({0, 0}), 4u);
  // Conjugation by the swap on 2x2 matrices, computed by hand: it swaps
  // E00 <-> E11 and E01 <-> E10. Eigenvalues +1 (dim 2) and -1 (dim 2).
  QMatrix t = s.theta({0, 0});
  QMatrix want(4, 4);
  want(3, 0) = want(0, 3) = want(2, 1) = want(1, 2) = 1;
  EXPECT_EQ(t, want);
  EXPECT_EQ(rank(t - QMatrix::identity(4)), 2u);
  EXPECT_EQ(rank(t + QMatrix::identity(4)), 2u);

  MixedObject ab = hom_enriched(rank_one(1), rank_one(3));
  EXPECT_EQ(gr(ab).graded_degrees(), std::vector<int>{2});
  EXPECT_THROW(hom_enriched(rank_one(0, 1), rank_one(0, 2)), LevelMismatch);
}

TEST(HomGraded, Examples) {
  EXPECT_EQ(hom_graded(MixedObject::unit(), MixedObject::unit()), Bigraded::unit());
  EXPECT_TRUE(hom_graded(rank_one(0), rank_one(2)).is_zero());
  EXPECT_THROW(hom_graded(rank_one(0, 1), rank_one(0, 2)), LevelMismatch);
}

TEST(HomGraded, IsWeightZeroPieceOfEnrichedHom) {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    MixedObject m = random_mixed(rng).object, n = random_mixed(rng).object;
    EXPECT_EQ(hom_graded(m, n), graded_piece(gr(hom_enriched(m, n)), 0));
  }
}

TEST(HomGraded, BlindToTheta) {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    MixedSample a = random_mixed(rng), b = random_mixed(rng);
    EXPECT_EQ(hom_graded(a.object, b.object), hom_graded(a.retheta, b.retheta));
  }
}

TEST(HomMixed, Examples) {
  Bigraded uu = hom_mixed(MixedObject::unit(), MixedObject::unit());
  EXPECT_EQ(h_at(uu, 0), 1u);
  EXPECT_EQ(h_at(uu, 1), 1u);
  EXPECT_EQ(h_at(hom_mixed(rank_one(0), rank_one(2)), 0), 0u);
  // Centralizer of the swap in 2x2 matrices: span of I and the swap.
  EXPECT_EQ(h_at(hom_mixed(swap_object(), swap_object()), 0), 2u);
}

TEST(Induce, Examples) {
  MixedObject i = induce(MixedObject::unit(2), 1);
  EXPECT_EQ(i.level(), 1);
  EXPECT_EQ(gr(i).dim({0, 0}), 2u);
  EXPECT_EQ(i.theta({0, 0}), swap2());
  EXPECT_EQ(gr(induce(swap_object(3), 3)), gr(swap_object(3)));
  EXPECT_THROW(induce(MixedObject::unit(2), 3), BadLevels);
  Rng rng(24);
  for (int i = 0; i < 50; ++i) {
    MixedObject m = random_mixed(rng, 3, -2, 2, 6).object;
    for (int to : {1, 2, 3, 6}) {
      MixedObject d = induce(m, to);
      const Bigraded base = gr(m);
      for (const auto& [b, p] : base.entries()) EXPECT_EQ(gr(d).dim(b), p.dim * static_cast<std::size_t>(6 / to));
    }
  }
}

TEST(Induce, ExtensionOfScalarsDichotomy) {
  // Maps from the unit into the point of degree two: two over the base
  // field, one after base change to the quadratic extension.
  MixedObject over1 = induce(MixedObject::unit(2), 1);
  EXPECT_EQ(h_at(hom_graded(MixedObject::unit(1), over1), 0), 2u);
  EXPECT_EQ(h_at(hom_graded(MixedObject::unit(2), MixedObject::unit(2)), 0), 1u);
  // Frobenius-invariant maps see the permutation: only the diagonal line survives.
  EXPECT_EQ(h_at(hom_mixed(MixedObject::unit(1), over1), 0), 1u);
}

TEST(OblvGrSum, Examples) {
  auto w = oblv_gr_sum(MixedObject::unit(), MixedObject::unit());
  EXPECT_TRUE(w.pass);
  EXPECT_EQ(w.graded_side, (std::map<int, std::size_t>{{0, 1}}));
  auto s = oblv_gr_sum(swap_object(), MixedObject::unit());
  EXPECT_TRUE(s.pass);
  EXPECT_EQ(s.graded_side.at(0), 2u);
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    MixedObject m = random_mixed(rng, 3).object, n = random_mixed(rng, 3).object;
    EXPECT_TRUE(oblv_gr_sum(m, n).pass);
  }
}

TEST(GradedHomSummand, SplitsOnSamples) {
  Rng rng(26);
  for (int i = 0; i < 200; ++i) {
    MixedObject m = random_mixed(rng).object, n = random_mixed(rng).object;
    auto s = graded_hom_summand(m, n);
    EXPECT_TRUE(s.pass);
    EXPECT_EQ(s.inclusion.cols(), h_at(hom_graded(m, n), 0));
  }
}

TEST(MixedTensor, GrIsMonoidal) {
  Rng rng(27);
  for (int i = 0; i < 100; ++i) {
    MixedObject m = random_mixed(rng, 3).object, n = random_mixed(rng, 3).object;
    EXPECT_EQ(gr(tensor(m, n)), tensor(gr(m), gr(n)));
  }
}
