#include <gtest/gtest.h>

#include "hecat/bigraded.hpp"
#include "hecat/sampling.hpp"

using namespace hecat;

namespace {

Bigraded two_term(int g, int c, Rational scalar = 1) {
  Bigraded v;
  v.set_entry({g, c}, 1);
  v.set_entry({g, c + 1}, 1);
  QMatrix d(1, 1);
  d(0, 0) = scalar;
  v.set_differential({g, c}, d);
  return v;
}

// Brute-force reindexer: moves every entry by hand.
std::map<Bidegree, std::size_t> shifted_dims(const Bigraded& v, int dg, int dc) {
  std::map<Bidegree, std::size_t> out;
  for (const auto& [b, p] : v.entries()) out[{b.g + dg, b.c + dc}] = p.dim;
  return out;
}

std::map<Bidegree, std::size_t> dims_of(const Bigraded& v) {
  std::map<Bidegree, std::size_t> out;
  for (const auto& [b, p] : v.entries()) out[b] = p.dim;
  return out;
}

}  // namespace

TEST(Bidegree, WeightConvention) {
  Bidegree b{3, 1};
  EXPECT_EQ(b.weight(), 2);
  EXPECT_EQ(b.weight() + b.c, b.g);
}

TEST(ShiftCoh, Examples) {
  Bigraded u = Bigraded::unit();
  EXPECT_EQ(shift_coh(u, 0), u);
  Bigraded s = shift_coh(u, 1);
  EXPECT_EQ(s.dim({0, -1}), 1u);
  EXPECT_EQ(s.entries().begin()->first.weight(), 1);
  Bigraded t = shift_coh(two_term(0, 0), 2);
  EXPECT_EQ(dims_of(t), shifted_dims(two_term(0, 0), 0, -2));
  EXPECT_EQ(rank(t.differential({0, -2})), 1u);
  Bigraded odd = shift_coh(two_term(0, 0), 1);
  EXPECT_EQ(odd.differential({0, -1})(0, 0), Rational(-1));
}

TEST(ShiftGr, ExamplesAndComposition) {
  Bigraded v = Bigraded::line(2, 0);
  EXPECT_EQ(shift_gr(v, 2), Bigraded::line(0, 0));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    Bigraded x = random_bigraded(rng);
    int a = uniform_int(rng, -3, 3), b = uniform_int(rng, -3, 3);
    EXPECT_EQ(shift_gr(x, 0), x);
    EXPECT_EQ(shift_gr(shift_gr(x, a), b), shift_gr(x, a + b));
  }
}

TEST(Tensor, UnitAndDegrees) {
  Rng rng(2);
  Bigraded x = random_bigraded(rng);
  EXPECT_EQ(dims_of(tensor(Bigraded::unit(), x)), dims_of(x));
  EXPECT_TRUE(quasi_isomorphic(tensor(Bigraded::unit(), x), x));
  Bigraded p = tensor(Bigraded::line(1, 0), Bigraded::line(2, 3));
  EXPECT_EQ(p.dim({3, 3}), 1u);
  EXPECT_EQ(p.total_dim(), 1u);
}

TEST(Tensor, DifferentialSquaresToZero) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    Bigraded a = random_bigraded(rng), b = random_bigraded(rng);
    Bigraded t = tensor(a, b);
    EXPECT_NO_THROW(t.validate());
    // Kunneth over a field: cohomology of the tensor is the tensor of cohomologies.
    EXPECT_EQ(cohomology_dims(t), cohomology_dims(tensor(from_dims(cohomology_dims(a)), from_dims(cohomology_dims(b)))));
  }
}

TEST(HomComplex, UnitLawsAndEuler) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    Bigraded v = random_bigraded(rng), w = random_bigraded(rng);
    EXPECT_EQ(dims_of(hom_complex(Bigraded::unit(), w)), dims_of(w));
    Bigraded h = hom_complex(v, w);
    EXPECT_NO_THROW(h.validate());
    // Laurent-polynomial oracle: chi(Hom(V, W)) = chi(W) * bar(chi(V)).
    EXPECT_EQ(euler_characteristic(h), euler_characteristic(w) * euler_characteristic(v).bar());
  }
  Bigraded v = Bigraded::line(2, 1);
  Bigraded h = hom_complex(v, Bigraded::unit());
  EXPECT_EQ(h.dim({-2, -1}), 1u);
}

TEST(HomComplex, CohomologyOfHomIsHomOfCohomology) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    Bigraded v = random_bigraded(rng), w = random_bigraded(rng);
    EXPECT_EQ(cohomology_dims(hom_complex(v, w)),
              cohomology_dims(hom_complex(from_dims(cohomology_dims(v)), from_dims(cohomology_dims(w)))));
  }
}

TEST(WeightTruncate, Examples) {
  auto [lo, hi] = weight_truncate(Bigraded::unit(), 0);
  EXPECT_EQ(lo, Bigraded::unit());
  EXPECT_TRUE(hi.is_zero());
  auto [lo2, hi2] = weight_truncate(Bigraded::line(2, 0), 0);
  EXPECT_TRUE(lo2.is_zero());
  EXPECT_EQ(hi2, Bigraded::line(2, 0));
  Bigraded acyclic = two_term(0, 0);
  auto [lo3, hi3] = weight_truncate(acyclic, 0);
  EXPECT_EQ(lo3, acyclic);
  EXPECT_TRUE(hi3.is_zero());
}

TEST(WeightTruncate, TriangleIsExact) {
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    Bigraded v = random_bigraded(rng);
    int n = uniform_int(rng, -3, 3);
    auto [lo, hi] = weight_truncate(v, n);
    // Subcomplex-closure oracle: d never leaves the low part.
    for (const auto& [b, m] : v.differentials())
      if (b.weight() <= n) EXPECT_LE(b.next().weight(), n);
    EXPECT_TRUE(in_weight_le(lo, n));
    EXPECT_TRUE(in_weight_ge(hi, n + 1));
    Bigraded c = cone(lo, v, coordinate_inclusion(lo, v));
    EXPECT_NO_THROW(c.validate());
    EXPECT_TRUE(quasi_isomorphic(c, hi));
  }
}

TEST(TTruncate, Examples) {
  Bigraded v = direct_sum(Bigraded::line(0, 0), Bigraded::line(1, 2));
  auto [lo, hi] = t_truncate(v, 1);
  EXPECT_EQ(dims_of(lo), (std::map<Bidegree, std::size_t>{{{0, 0}, 1}}));
  EXPECT_EQ(dims_of(hi), (std::map<Bidegree, std::size_t>{{{1, 2}, 1}}));
  auto [lo2, hi2] = t_truncate(two_term(0, 0), 0);
  EXPECT_TRUE(cohomology_dims(lo2).empty());
  EXPECT_TRUE(cohomology_dims(hi2).empty());
}

TEST(TTruncate, RecoversCohomology) {
  Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    Bigraded v = random_bigraded(rng);
    int n = uniform_int(rng, -3, 3);
    auto [lo, hi] = t_truncate(v, n);
    EXPECT_NO_THROW(lo.validate());
    EXPECT_NO_THROW(hi.validate());
    auto hv = cohomology_dims(v);
    std::map<Bidegree, std::size_t> want_lo, want_hi;
    for (const auto& [b, d] : hv) (b.c <= n ? want_lo : want_hi)[b] = d;
    EXPECT_EQ(cohomology_dims(lo), want_lo);
    EXPECT_EQ(cohomology_dims(hi), want_hi);
    // tau_{>= n} tau_{<= n} V is H^n placed in degree n.
    auto [below, rest] = t_truncate(lo, n - 1);
    std::map<Bidegree, std::size_t> hn;
    for (const auto& [b, d] : hv)
      if (b.c == n) hn[b] = d;
    EXPECT_EQ(cohomology_dims(rest), hn);
    (void)below;
  }
}

TEST(DecomposePure, Examples) {
  auto d = decompose_pure(Bigraded::line(1, 1));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0], std::make_tuple(1, 1, std::size_t{1}));
  EXPECT_THROW(decompose_pure(Bigraded::line(0, 1)), NotPure);
  // Heart object with an extra cancelling pair of equal graded degree.
  Bigraded v = direct_sum(Bigraded::line(2, 2), two_term(2, 2));
  auto e = decompose_pure(v);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(std::get<2>(e[0]), 1u);
}

TEST(Shear, InverseAndMonoidal) {
  EXPECT_EQ(shear_fwd(Bigraded::line(2, 0)), Bigraded::line(2, 2));
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    Bigraded v = random_bigraded(rng), w = random_bigraded(rng);
    EXPECT_EQ(shear_bwd(shear_fwd(v)), v);
    EXPECT_EQ(shear_fwd(shear_bwd(v)), v);
    EXPECT_EQ(dims_of(shear_fwd(tensor(v, w))), dims_of(tensor(shear_fwd(v), shear_fwd(w))));
  }
}

TEST(WeightComplex, PureObjectAndExtension) {
  Bigraded pure = Bigraded::line(1, 1);
  Bigraded wc = weight_complex(pure, canonical_filtration(pure));
  EXPECT_EQ(dims_of(wc), (std::map<Bidegree, std::size_t>{{{1, 0}, 1}}));
  // Extension of a weight-1 piece by a weight-0 piece in graded degree 1.
  Bigraded ext = two_term(1, 0);
  Bigraded w = weight_complex(ext, canonical_filtration(ext));
  EXPECT_EQ(w.dim({1, -1}), 1u);
  EXPECT_EQ(w.dim({1, 0}), 1u);
  EXPECT_EQ(rank(w.differential({1, -1})), 1u);
}

TEST(WeightComplex, IndependentOfFiltrationAndMonoidal) {
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    FilteredSample a = random_filtered(rng), b = random_filtered(rng);
    Bigraded wa = weight_complex(a.object, a.filtration);
    EXPECT_NO_THROW(wa.validate());
    EXPECT_TRUE(quasi_isomorphic(wa, weight_complex(a.object, canonical_filtration(a.object))));
    EXPECT_TRUE(quasi_isomorphic(wa, shear_bwd(a.object)));
    Bigraded t = tensor(a.object, b.object);
    Bigraded wt = weight_complex(t, tensor_filtration(a.object, a.filtration, b.object, b.filtration));
    Bigraded wb = weight_complex(b.object, b.filtration);
    EXPECT_TRUE(quasi_isomorphic(wt, tensor(wa, wb)));
  }
}

TEST(WeightComplex, RejectsImpureQuotients) {
  Bigraded v = Bigraded::line(0, 1);  // weight -1
  WeightFiltration f;
  f.first = 0;
  f.steps.push_back({{Bidegree{0, 1}, QMatrix::identity(1)}});
  EXPECT_THROW(weight_complex(v, f), ImpureQuotient);
}

TEST(WeightStructure, Axioms) {
  Rng rng(10);
  BigradedSampleOptions le, ge;
  le.max_weight = 0;
  ge.min_weight = 1;
  for (int i = 0; i < 600; ++i) {
    Bigraded v = random_bigraded(rng, le), w = random_bigraded(rng, ge);
    ASSERT_TRUE(in_weight_le(v, 0));
    ASSERT_TRUE(in_weight_ge(w, 1));
    EXPECT_EQ(cohomology_dims(hom_complex(v, w)).count({0, 0}), 0u);
    EXPECT_TRUE(in_weight_ge(shift_coh(w, 1), 1));
    EXPECT_TRUE(in_weight_le(shift_coh(v, -1), 0));
    // Retract closure: a summand of an object in the class stays in the class.
    Bigraded x = random_bigraded(rng, le);
    EXPECT_TRUE(in_weight_le(direct_sum(v, x), 0));
  }
}

TEST(TTruncate, IsWeightExact) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    Bigraded v = random_bigraded(rng);
    auto range = weight_range(v);
    int n = uniform_int(rng, -3, 3);
    auto [lo, hi] = t_truncate(v, n);
    for (const Bigraded* part : {&lo, &hi}) {
      auto r = weight_range(*part);
      if (!r) continue;
      ASSERT_TRUE(range.has_value());
      EXPECT_GE(r->first, range->first);
      EXPECT_LE(r->second, range->second);
    }
  }
}

TEST(Heart, DiagonalFiltrationHasSemisimpleGradedPieces) {
  Rng rng(12);
  BigradedSampleOptions o;
  o.diagonal = true;
  for (int i = 0; i < 200; ++i) {
    Bigraded x = random_bigraded(rng, o);
    for (int g : x.graded_degrees()) {
      // Gr_g of the filtration by graded pieces is the piece itself; its
      // cohomology is concentrated in degree g.
      for (const auto& [b, d] : cohomology_dims(graded_piece(x, g))) EXPECT_EQ(b.c, g);
    }
    EXPECT_NO_THROW(decompose_pure(x));
  }
}
