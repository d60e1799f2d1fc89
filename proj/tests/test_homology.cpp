#include <gtest/gtest.h>

#include "hecat/homology.hpp"

using namespace hecat;

namespace {

using Q = Rational;

RingPtr<Q> ring(const char* type) { return PolyRing<Q>::make(CoxeterSystem<Q>::named(type)); }

BraidWord braid(int strands, const char* word) { return sl_system(strands).group().parse_braid(word); }

// Mirror braid: every crossing flipped.
BraidWord flipped(BraidWord b) {
  for (auto& l : b) l.inverse = !l.inverse;
  return b;
}

// Independent side: the permutation-model Markov trace, no Soergel bimodules.
VFraction trace_of(int strands, const BraidWord& b) {
  return trace::Trace(trace::hochschild_convention())(trace::braid_image(strands, b));
}

const VFraction kUnknot(Laurent2(1) + Laurent2::monomial(1, 2), 1);

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

}  // namespace

TEST(Hochschild, PolynomialRingOneVariable) {
  HochschildTable t = hochschild(unit_bimodule(ring("A1")));
  EXPECT_EQ(t.lo, 0);
  for (int g = 0; g <= t.hi; ++g) {
    EXPECT_EQ(t.dim(0, g), g % 2 ? 0u : 1u) << g;
    EXPECT_EQ(t.dim(1, g), g % 2 || g == 0 ? 0u : 1u) << g;
    EXPECT_EQ(t.dim(2, g), 0u);
  }
  EXPECT_EQ(t.numerators.at(0), LaurentPoly(1));
  EXPECT_EQ(t.numerators.at(1), LaurentPoly::monomial(2));
  EXPECT_EQ(euler_characteristic(t), kUnknot);
}

TEST(Hochschild, PolynomialRingTwoVariables) {
  HochschildTable t = hochschild(unit_bimodule(ring("A2")));
  // Q[x1, x2] (x) Lambda(theta1, theta2): h theta's and the rest in x's.
  for (int h = 0; h <= 2; ++h)
    for (int g = 0; g <= t.hi; ++g) {
      const std::size_t want = g % 2 ? 0 : binomial(2, h) * static_cast<std::size_t>(std::max(0, g / 2 - h + 1));
      EXPECT_EQ(t.dim(h, g), want) << h << " " << g;
    }
  EXPECT_EQ(t.numerators.at(1), LaurentPoly::monomial(2, 2));
  EXPECT_EQ(t.numerators.at(2), LaurentPoly::monomial(4));
}

TEST(Hochschild, ZeroAndAdditivity) {
  auto r = ring("A2");
  std::vector<PolyMatrix<Q>> none(r->num_vars(), PolyMatrix<Q>(0, 0));
  Bimodule<Q> zero(r, {}, none, {}, r->hecke().zero());
  HochschildTable z = hochschild(zero);
  EXPECT_TRUE(z.dims.empty());
  EXPECT_EQ(euler_characteristic(z), VFraction());

  Bimodule<Q> a = bott_samelson(r, {0}), b = unit_bimodule(r).shifted(1);
  const int w = 24;
  HochschildTable ta = hochschild(a, w), tb = hochschild(b, w), tab = hochschild(direct_sum(a, b), w);
  ASSERT_EQ(ta.lo, tab.lo);
  // b starts one degree higher; pad to a common window.
  for (int h = 0; h <= 2; ++h)
    for (int g = tab.lo; g <= tab.lo + w - 2; ++g) EXPECT_EQ(tab.dim(h, g), ta.dim(h, g) + tb.dim(h, g)) << h << " " << g;
  EXPECT_EQ(euler_characteristic(tab), euler_characteristic(ta) + euler_characteristic(tb));
}

TEST(Hochschild, ShiftMovesTheTable) {
  auto r = ring("A1");
  HochschildTable t = hochschild(unit_bimodule(r), 16), s = hochschild(unit_bimodule(r).shifted(3), 16);
  for (const auto& [k, d] : t.dims) EXPECT_EQ(s.dim(k.first, k.second - 3), d);
  EXPECT_EQ(euler_characteristic(s), VFraction(Laurent2::monomial(0, -3)) * euler_characteristic(t));
}

TEST(Hochschild, SmallWindowThrows) {
  auto r = ring("A2");
  EXPECT_THROW(hochschild(bott_samelson(r, {0, 1}), 3), WindowTooSmall);
  EXPECT_THROW(triply_graded(2, braid(2, "s s"), 3), WindowTooSmall);
}

TEST(TriplyGraded, UnknotIsHochschildOfOneVariable) {
  TriplyGraded u = triply_graded(1, {});
  HochschildTable r = hochschild(unit_bimodule(ring("A1")), u.hi);
  for (const auto& [k, d] : u.dims) {
    EXPECT_EQ(std::get<2>(k), 0);
    EXPECT_EQ(r.dim(std::get<0>(k), std::get<1>(k)), d);
  }
  for (const auto& [k, d] : r.dims) EXPECT_EQ(u.dim(k.first, k.second, 0), d);
  EXPECT_EQ(euler_characteristic(u), kUnknot);
  EXPECT_EQ(euler_characteristic(TriplyGraded{}), VFraction());
}

TEST(TriplyGraded, BraidRelationAndConjugation) {
  TriplyGraded a = triply_graded(3, braid(3, "s t s"), 40), b = triply_graded(3, braid(3, "t s t"), 40);
  EXPECT_EQ(a.dims, b.dims);
  EXPECT_EQ(a.numerators, b.numerators);
  // Closures of conjugate braids agree: HH(XY) = HH(YX).
  EXPECT_EQ(triply_graded(3, braid(3, "s -t"), 32).dims, triply_graded(3, braid(3, "-t s"), 32).dims);
  EXPECT_THROW(triply_graded(2, braid(3, "t")), NotTypeA);
}

TEST(TriplyGraded, GlDirectlyMatchesSlTimesLine) {
  auto cat = SoergelCategory<Q>::make(CoxeterSystem<Q>::type_a_gl(2));
  for (const char* w : {"", "s", "-s", "s s"}) {
    BraidWord b = braid(2, w);
    const int width = default_homology_window(2, b.size());
    TriplyGraded direct = hochschild_homology_table(rouquier(cat, b), width);
    TriplyGraded via = triply_graded(2, b, width);
    EXPECT_EQ(direct.lo, via.lo) << w;
    EXPECT_EQ(direct.dims, via.dims) << w;
    EXPECT_EQ(direct.numerators, via.numerators) << w;
  }
}

TEST(TriplyGraded, EulerMatchesMirrorTrace) {
  struct Case {
    int strands;
    const char* word;
  };
  for (Case c : std::vector<Case>{{1, ""}, {2, ""}, {2, "s"}, {2, "-s"}, {2, "s s"}, {2, "s s s"}, {3, "s t s"}, {3, "s -t"}}) {
    BraidWord b = braid(c.strands, c.word);
    EXPECT_EQ(euler_characteristic(triply_graded(c.strands, b)), kUnknot * trace_of(c.strands, flipped(b)))
        << c.strands << " [" << c.word << "]";
  }
}

TEST(TriplyGraded, EulerMultiplicativeUnderDisjointUnion) {
  // sigma_1 on 2 strands next to a free strand.
  VFraction one = euler_characteristic(triply_graded(1, {}));
  VFraction hopf = euler_characteristic(triply_graded(2, braid(2, "s s")));
  EXPECT_EQ(euler_characteristic(triply_graded(3, braid(3, "s s"))), hopf * one);
  EXPECT_EQ(euler_characteristic(triply_graded(3, braid(3, "-t"))),
            euler_characteristic(triply_graded(2, braid(2, "-s"))) * one);
}
