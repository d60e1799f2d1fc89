#pragma once

// Exact coefficient fields: the rationals (GMP) and quadratic extensions
// Q(sqrt(D)) used for non-crystallographic dihedral realizations.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hecat {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p"; the result is canonicalized.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// a + b*sqrt(D) with rational a, b. D must be square-free and positive.
template <int D>
struct QuadraticRational {
  Rational a{0};
  Rational b{0};

  QuadraticRational() = default;
  QuadraticRational(long x) : a(x) {}  // NOLINT(google-explicit-constructor)
  QuadraticRational(const Rational& x) : a(x) {}  // NOLINT(google-explicit-constructor)
  QuadraticRational(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}

  static QuadraticRational root() { return {Rational(0), Rational(1)}; }

  friend QuadraticRational operator+(const QuadraticRational& x, const QuadraticRational& y) {
    return {Rational(x.a + y.a), Rational(x.b + y.b)};
  }
  friend QuadraticRational operator-(const QuadraticRational& x, const QuadraticRational& y) {
    return {Rational(x.a - y.a), Rational(x.b - y.b)};
  }
  friend QuadraticRational operator*(const QuadraticRational& x, const QuadraticRational& y) {
    return {Rational(x.a * y.a + D * x.b * y.b), Rational(x.a * y.b + x.b * y.a)};
  }
  QuadraticRational inverse() const {
    Rational norm = a * a - D * b * b;
    if (norm == 0) throw std::domain_error("division by zero in quadratic field");
    return {Rational(a / norm), Rational(-b / norm)};
  }
  friend QuadraticRational operator/(const QuadraticRational& x, const QuadraticRational& y) {
    return x * y.inverse();
  }
  QuadraticRational operator-() const { return {Rational(-a), Rational(-b)}; }
  QuadraticRational& operator+=(const QuadraticRational& y) { return *this = *this + y; }
  QuadraticRational& operator-=(const QuadraticRational& y) { return *this = *this - y; }
  QuadraticRational& operator*=(const QuadraticRational& y) { return *this = *this * y; }
  QuadraticRational& operator/=(const QuadraticRational& y) { return *this = *this / y; }
  friend bool operator==(const QuadraticRational& x, const QuadraticRational& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const QuadraticRational& x, const QuadraticRational& y) { return !(x == y); }
};

template <int D>
std::string to_string(const QuadraticRational<D>& x) {
  if (x.b == 0) return x.a.get_str();
  std::string s = x.a == 0 ? std::string() : x.a.get_str() + (x.b > 0 ? "+" : "");
  return s + x.b.get_str() + "*r" + std::to_string(D);
}

// Field traits used by the templated algebra. Every field exposes a name and
// a flag telling whether it is the plain rationals.
template <class F>
struct field_traits;

template <>
struct field_traits<Rational> {
  static constexpr const char* name = "QQ";
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
};

template <int D>
struct field_traits<QuadraticRational<D>> {
  static constexpr const char* name = "QQ(sqrt)";
  static bool is_zero(const QuadraticRational<D>& x) { return x.a == 0 && x.b == 0; }
};

template <class F>
bool is_zero(const F& x) {
  return field_traits<F>::is_zero(x);
}

using GoldenField = QuadraticRational<5>;

}  // namespace hecat
