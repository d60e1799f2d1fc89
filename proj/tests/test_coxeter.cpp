#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hecat/coxeter.hpp"
#include "hecat/polynomial.hpp"

using namespace hecat;

namespace {

using QSystem = CoxeterSystem<Rational>;

// Poincare polynomial prod_i [d_i]_q from the degrees of the fundamental invariants.
std::vector<int> poincare_from_degrees(const std::vector<int>& degrees) {
  std::vector<int> p{1};
  for (int d : degrees) {
    std::vector<int> next(p.size() + static_cast<std::size_t>(d) - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (int j = 0; j < d; ++j) next[i + static_cast<std::size_t>(j)] += p[i];
    p = next;
  }
  return p;
}

std::vector<int> length_distribution(const CoxeterGroup& g) {
  std::vector<int> out(static_cast<std::size_t>(g.length(g.longest())) + 1, 0);
  for (int w : g.enumerate()) ++out[static_cast<std::size_t>(g.length(w))];
  return out;
}

int inversions(const std::vector<int>& p) {
  int n = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) n += p[i] > p[j];
  return n;
}

}  // namespace

TEST(Coxeter, A2MatchesPermutationModel) {
  QSystem a2 = QSystem::named("A2");
  const CoxeterGroup& g = a2.group();
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(g.length(g.longest()), 3);
  // Oracle: lengths of S3 are inversion counts.
  std::vector<int> perm{0, 1, 2};
  std::multiset<int> lens;
  do lens.insert(inversions(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  std::multiset<int> ours;
  for (int w : g.enumerate()) ours.insert(g.length(w));
  EXPECT_EQ(ours, lens);
  EXPECT_EQ(g.element_string(g.longest()), "sts");
}

TEST(Coxeter, SmallTypes) {
  QSystem a1 = QSystem::named("A1");
  EXPECT_EQ(a1.group().size(), 2u);
  QSystem b2 = QSystem::named("I2(4)");
  EXPECT_EQ(b2.group().size(), 8u);
  EXPECT_EQ(b2.group().length(b2.group().longest()), 4);
  // Dihedral word oracle: every element is an alternating word, two per length
  // 1..m-1 and one each for lengths 0 and m.
  for (int m : {2, 3, 4, 6}) {
    QSystem d = QSystem::named("I2(" + std::to_string(m) + ")");
    std::vector<int> want(static_cast<std::size_t>(m) + 1, 2);
    want.front() = want.back() = 1;
    EXPECT_EQ(length_distribution(d.group()), want) << m;
  }
  CoxeterSystem<GoldenField> i25 = CoxeterSystem<GoldenField>::named("I2(5)");
  EXPECT_EQ(i25.group().size(), 10u);
  EXPECT_THROW(QSystem::named("I2(5)"), InvalidObject);
}

TEST(Coxeter, PoincarePolynomials) {
  EXPECT_EQ(length_distribution(QSystem::named("A1").group()), poincare_from_degrees({2}));
  EXPECT_EQ(length_distribution(QSystem::named("A2").group()), poincare_from_degrees({2, 3}));
  EXPECT_EQ(length_distribution(QSystem::named("B2").group()), poincare_from_degrees({2, 4}));
  EXPECT_EQ(length_distribution(QSystem::named("A3").group()), poincare_from_degrees({2, 3, 4}));
  EXPECT_EQ(length_distribution(QSystem::named("A4").group()), poincare_from_degrees({2, 3, 4, 5}));
}

TEST(Coxeter, InfiniteGroupHitsBound) {
  std::vector<std::vector<int>> affine{{1, 3, 3}, {3, 1, 3}, {3, 3, 1}};
  EXPECT_THROW(QSystem::from_coxeter_matrix(affine, "", 500), BoundExceeded);
}

TEST(Coxeter, WordsAreLexLeastReduced) {
  QSystem a3 = QSystem::named("A3");
  const CoxeterGroup& g = a3.group();
  // Brute force: all words up to length 6, keep the lexicographically least
  // word of minimal length for every element.
  std::map<int, Word> best;
  std::vector<Word> layer{{}};
  for (int len = 0; len <= 6; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      int e = g.element(w);
      auto it = best.find(e);
      if (it == best.end()) best[e] = w;
      else if (it->second.size() == w.size() && w < it->second) it->second = w;
      for (int s = 0; s < 3; ++s) {
        Word x = w;
        x.push_back(s);
        next.push_back(x);
      }
    }
    layer = next;
  }
  ASSERT_EQ(best.size(), g.size());
  for (const auto& [e, w] : best) EXPECT_EQ(g.word(e), w);
}

TEST(Coxeter, MultiplyInverseAndRelations) {
  for (const char* type : {"A2", "B2", "A3", "I2(6)"}) {
    QSystem sys = QSystem::named(type);
    const CoxeterGroup& g = sys.group();
    int s = g.generator(0);
    EXPECT_EQ(g.multiply(s, s), g.identity());
    for (int w : g.enumerate()) {
      EXPECT_EQ(g.multiply(w, g.inverse(w)), g.identity());
      EXPECT_EQ(sys.matrix(w) * sys.matrix(g.inverse(w)), Matrix<Rational>::identity(sys.num_vars()));
      for (int t = 0; t < static_cast<int>(g.rank()); ++t)
        EXPECT_EQ(std::abs(g.length(g.right_mult(w, t)) - g.length(w)), 1);
      for (int u : g.enumerate()) EXPECT_LE(g.length(g.multiply(w, u)), g.length(w) + g.length(u));
    }
    const auto& m = g.coxeter_matrix();
    for (int a = 0; a < static_cast<int>(g.rank()); ++a)
      for (int b = a + 1; b < static_cast<int>(g.rank()); ++b) {
        Word x, y;
        for (int i = 0; i < m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; ++i) {
          x.push_back(i % 2 ? b : a);
          y.push_back(i % 2 ? a : b);
        }
        EXPECT_EQ(g.element(x), g.element(y));
      }
  }
  QSystem a2 = QSystem::named("A2");
  EXPECT_EQ(a2.group().length(a2.group().element({0, 1})), 2);
}

TEST(Coxeter, SystemMismatchIsReported) {
  QSystem a2 = QSystem::named("A2");
  EXPECT_THROW(a2.group().element({5}), UnknownGenerator);
  EXPECT_THROW(a2.group().parse_word("s q"), UnknownGenerator);
  EXPECT_EQ(a2.group().parse_word("sts"), (Word{0, 1, 0}));
  EXPECT_EQ(a2.group().parse_word("s1 s2"), (Word{0, 1}));
  EXPECT_EQ(a2.group().parse_word("e"), Word{});
  BraidWord b = a2.group().parse_braid("s -t s2");
  ASSERT_EQ(b.size(), 3u);
  EXPECT_TRUE(b[1].inverse);
}

TEST(Bruhat, MatchesSubwordOracle) {
  for (const char* type : {"A2", "B2", "A3"}) {
    QSystem sys = QSystem::named(type);
    const CoxeterGroup& g = sys.group();
    for (int w : g.enumerate()) {
      const Word& word = g.word(w);
      std::set<int> below;
      for (std::size_t mask = 0; mask < (std::size_t{1} << word.size()); ++mask) {
        Word sub;
        for (std::size_t i = 0; i < word.size(); ++i)
          if (mask >> i & 1) sub.push_back(word[i]);
        below.insert(g.element(sub));
      }
      for (int x : g.enumerate()) EXPECT_EQ(g.bruhat_leq(x, w), below.count(x) == 1) << type;
      EXPECT_TRUE(g.bruhat_leq(g.identity(), w));
    }
  }
  QSystem a2 = QSystem::named("A2");
  const CoxeterGroup& g = a2.group();
  EXPECT_TRUE(g.bruhat_leq(g.generator(0), g.longest()));
  EXPECT_TRUE(g.bruhat_leq(g.generator(1), g.longest()));
}

TEST(Action, SimpleRootAndRingHomomorphism) {
  QSystem a1 = QSystem::named("A1");
  auto alpha = simple_root(a1, 0);
  EXPECT_EQ(act(a1, a1.group().generator(0), alpha), -alpha);
  std::mt19937_64 rng(3);
  for (const char* type : {"A2", "B2", "I2(6)"}) {
    QSystem sys = QSystem::named(type);
    const CoxeterGroup& g = sys.group();
    for (int i = 0; i < 50; ++i) {
      auto f = random_polynomial<Rational>(rng, sys.num_vars(), 3);
      auto h = random_polynomial<Rational>(rng, sys.num_vars(), 3);
      int w = static_cast<int>(rng() % g.size());
      EXPECT_EQ(act(sys, g.identity(), f), f);
      EXPECT_EQ(act(sys, w, f * h), act(sys, w, f) * act(sys, w, h));
      EXPECT_EQ(act(sys, w, f).degree(), f.degree());
      int u = static_cast<int>(rng() % g.size());
      EXPECT_EQ(act(sys, w, act(sys, u, f)), act(sys, g.multiply(w, u), f));
    }
  }
}

TEST(Action, GlRealization) {
  QSystem gl3 = QSystem::type_a_gl(3);
  EXPECT_EQ(gl3.num_vars(), 3u);
  EXPECT_EQ(gl3.group().size(), 6u);
  // s1 swaps e1 and e2.
  auto e1 = Polynomial<Rational>::variable(0), e2 = Polynomial<Rational>::variable(1);
  EXPECT_EQ(act(gl3, gl3.group().generator(0), e1), e2);
  QSystem gl1 = QSystem::type_a_gl(1);
  EXPECT_EQ(gl1.group().size(), 1u);
  EXPECT_EQ(gl1.num_vars(), 1u);
}

TEST(Demazure, Examples) {
  QSystem a2 = QSystem::named("A2");
  EXPECT_TRUE(demazure(a2, 0, Polynomial<Rational>(1)).is_zero());
  EXPECT_EQ(demazure(a2, 0, simple_root(a2, 0)), Polynomial<Rational>(2));
  std::mt19937_64 rng(5);
  for (const char* type : {"A2", "B2", "I2(6)"}) {
    QSystem sys = QSystem::named(type);
    for (int i = 0; i < 40; ++i) {
      auto f = random_polynomial<Rational>(rng, sys.num_vars(), 4);
      auto h = random_polynomial<Rational>(rng, sys.num_vars(), 3);
      for (int s = 0; s < 2; ++s) {
        int sg = sys.group().generator(s);
        auto df = demazure(sys, s, f);
        EXPECT_EQ(act(sys, sg, df), df);
        EXPECT_TRUE(demazure(sys, s, df).is_zero());
        EXPECT_EQ(demazure(sys, s, f * h), df * h + act(sys, sg, f) * demazure(sys, s, h));
        // R^s-linearity.
        auto inv = h + act(sys, sg, h);
        EXPECT_EQ(demazure(sys, s, inv * f), inv * df);
      }
    }
  }
}

TEST(Demazure, GoldenRealization) {
  CoxeterSystem<GoldenField> i25 = CoxeterSystem<GoldenField>::named("I2(5)");
  std::mt19937_64 rng(6);
  for (int i = 0; i < 20; ++i) {
    auto f = random_polynomial<GoldenField>(rng, 2, 3);
    for (int s = 0; s < 2; ++s) {
      auto df = demazure(i25, s, f);
      EXPECT_EQ(act(i25, i25.group().generator(s), df), df);
    }
  }
}
