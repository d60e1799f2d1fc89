#include <gtest/gtest.h>

#include <random>

#include "hecat/laurent.hpp"
#include "hecat/linalg.hpp"
#include "hecat/rational.hpp"

using namespace hecat;

namespace {

Matrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int density) {
  Matrix<Rational> m(r, c);
  std::uniform_int_distribution<int> val(-3, 3), coin(0, 99);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) < density) m(i, j) = val(rng);
  return m;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(make_rational(-2, 4)), "-1/2");
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(GoldenField, ArithmeticIsExact) {
  GoldenField r = GoldenField::root();
  EXPECT_EQ(r * r, GoldenField(5));
  GoldenField phi(Rational(1, 2), Rational(1, 2));
  EXPECT_EQ(phi * phi, phi + GoldenField(1));
  EXPECT_EQ(phi * phi.inverse(), GoldenField(1));
  EXPECT_EQ(to_string(phi), "1/2+1/2*r5");
}

TEST(Dense, RankNullspaceSolveInverse) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_matrix(rng, 5, 7, 60);
    auto k = nullspace(m);
    EXPECT_EQ(k.cols() + rank(m), m.cols());
    EXPECT_TRUE((m * k).is_zero());
    std::vector<Rational> x(7);
    for (auto& e : x) e = std::uniform_int_distribution<int>(-2, 2)(rng);
    auto b = m.apply(x);
    auto y = solve(m, b);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(m.apply(*y), b);
  }
  Matrix<Rational> a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(1, 0) = 3;
  a(1, 1) = 4;
  auto inv = inverse(a);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(a * *inv, Matrix<Rational>::identity(2));
}

TEST(Sparse, AgreesWithDense) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    auto m = random_matrix(rng, 6, 8, 35);
    std::vector<SparseRow<Rational>> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::vector<Rational> r(m.cols());
      for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
      rows.push_back(dense_to_sparse(r));
    }
    EXPECT_EQ(sparse_rank(rows, m.cols()), rank(m));
    auto ker = sparse_kernel(rows, m.cols());
    EXPECT_EQ(ker.size(), m.cols() - rank(m));
    for (const auto& v : ker) EXPECT_TRUE(m.apply(sparse_to_dense(v, m.cols())) ==
                                          std::vector<Rational>(m.rows(), Rational(0)));
  }
}

TEST(Laurent, ArithmeticAndParsing) {
  LaurentPoly v = LaurentPoly::v();
  LaurentPoly p = v + v.bar();
  EXPECT_EQ(p.str(), "v^-1+v");
  EXPECT_EQ((p * p).str(), "v^-2+2+v^2");
  EXPECT_EQ(parse_laurent("v^-1+v"), p);
  EXPECT_EQ(parse_laurent("-2*v^3+1"), LaurentPoly::monomial(3, -2) + LaurentPoly(1));
  EXPECT_EQ((p - p).str(), "0");
}

TEST(Laurent, FractionsReduceAndExpand) {
  Laurent2 one_minus = Laurent2(1) - Laurent2::monomial(0, 2);
  VFraction f(one_minus * Laurent2::monomial(1, 0), 2);
  EXPECT_EQ(f.denominator_power(), 1);
  EXPECT_EQ(f.numerator(), Laurent2::monomial(1, 0));
  VFraction g(1, 1);  // 1 / (1 - v^2)
  Laurent2 s = g.series(6);
  EXPECT_EQ(s.coeff(0, 0), 1);
  EXPECT_EQ(s.coeff(0, 6), 1);
  EXPECT_EQ(s.coeff(0, 8), 0);
  EXPECT_EQ(g + g, VFraction(2, 1));
  EXPECT_EQ(g * VFraction(one_minus), VFraction(1));
}
