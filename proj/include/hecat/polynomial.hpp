#pragma once

// Polynomials over a field F in at most 8 variables, each of internal degree
// 2. Monomials are packed into a uint64 with 8 bits per exponent.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hecat/coxeter.hpp"
#include "hecat/linalg.hpp"
#include "hecat/rational.hpp"

namespace hecat {

using Monomial = std::uint64_t;

inline int exponent(Monomial m, std::size_t var) { return static_cast<int>((m >> (8 * var)) & 0xff); }
inline Monomial var_monomial(std::size_t var, int e = 1) { return static_cast<Monomial>(e) << (8 * var); }
inline int monomial_degree(Monomial m) {
  int d = 0;
  for (std::size_t v = 0; v < 8; ++v) d += exponent(m, v);
  return d;
}

/// All monomials of polynomial degree k in n variables, in increasing order.
inline std::vector<Monomial> monomials_of_degree(std::size_t n, int k) {
  std::vector<Monomial> out;
  if (k < 0) return out;
  if (n == 0) {
    if (k == 0) out.push_back(0);
    return out;
  }
  std::vector<int> e(n, 0);
  auto rec = [&](auto& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      Monomial m = 0;
      for (std::size_t v = 0; v < n; ++v) m |= var_monomial(v, e[v]);
      out.push_back(m);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      e[i] = x;
      self(self, i + 1, left - x);
    }
  };
  rec(rec, 0, k);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t count_monomials(std::size_t n, int k) {
  if (k < 0) return 0;
  if (n == 0) return k == 0 ? 1 : 0;
  // binomial(n + k - 1, k)
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - 1 + static_cast<std::size_t>(i)) / static_cast<std::size_t>(i);
  return r;
}

template <class F>
class Polynomial {
 public:
  using Term = std::pair<Monomial, F>;

  Polynomial() = default;
  Polynomial(const F& c) {  // NOLINT(google-explicit-constructor)
    if (!hecat::is_zero(c)) t_.emplace_back(0, c);
  }
  Polynomial(long c) : Polynomial(F(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial variable(std::size_t i) { return monomial(var_monomial(i), F(1)); }
  static Polynomial monomial(Monomial m, const F& c) {
    Polynomial p;
    if (!hecat::is_zero(c)) p.t_.emplace_back(m, c);
    return p;
  }
  /// Linear form sum_j coeffs[j] x_j.
  static Polynomial linear(const std::vector<F>& coeffs) {
    Polynomial p;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      if (!hecat::is_zero(coeffs[j])) p.t_.emplace_back(var_monomial(j), coeffs[j]);
    std::sort(p.t_.begin(), p.t_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    return p;
  }

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  F coeff(Monomial m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& a, Monomial b) { return a.first < b; });
    return it != t_.end() && it->first == m ? it->second : F(0);
  }
  F constant_term() const { return coeff(0); }

  /// Polynomial degree (internal degree is twice this); -1 for zero.
  int degree() const {
    int d = -1;
    for (const auto& [m, c] : t_) d = std::max(d, monomial_degree(m));
    return d;
  }
  bool is_homogeneous(int k) const {
    return std::all_of(t_.begin(), t_.end(), [&](const Term& t) { return monomial_degree(t.first) == k; });
  }
  Polynomial homogeneous_part(int k) const {
    Polynomial p;
    for (const auto& t : t_)
      if (monomial_degree(t.first) == k) p.t_.push_back(t);
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, F(1)); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, F(-1)); }
  Polynomial operator-() const { return scaled(F(-1)); }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  Polynomial scaled(const F& c) const {
    if (hecat::is_zero(c)) return {};
    Polynomial p = *this;
    for (auto& t : p.t_) t.second *= c;
    return p;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Term> raw;
    raw.reserve(a.t_.size() * b.t_.size());
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) raw.emplace_back(ma + mb, ca * cb);
    return from_raw(std::move(raw));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Substitutes x_j -> sum_k m(k, j) x_k (the linear automorphism with
  /// matrix m, column j the image of x_j).
  Polynomial substitute(const Matrix<F>& m) const {
    std::vector<Polynomial> images(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::vector<F> col(m.rows());
      for (std::size_t k = 0; k < m.rows(); ++k) col[k] = m(k, j);
      images[j] = linear(col);
    }
    Polynomial out;
    for (const auto& [mono, c] : t_) {
      Polynomial p(c);
      for (std::size_t j = 0; j < m.cols(); ++j)
        for (int e = exponent(mono, j); e > 0; --e) p *= images[j];
      out += p;
    }
    return out;
  }

  F evaluate(const std::vector<F>& point) const {
    F r(0);
    for (const auto& [m, c] : t_) {
      F x = c;
      for (std::size_t j = 0; j < point.size(); ++j)
        for (int e = exponent(m, j); e > 0; --e) x *= point[j];
      r += x;
    }
    return r;
  }

  /// Exact division by a nonzero linear form. Throws std::domain_error when
  /// the division leaves a remainder.
  Polynomial divide_by_linear(const Polynomial& l) const {
    std::size_t p = 0;
    F lead(0);
    for (const auto& [m, c] : l.t_) {
      if (monomial_degree(m) != 1) throw std::domain_error("divisor is not a linear form");
      for (std::size_t v = 0; v < 8; ++v)
        if (exponent(m, v) == 1) {
          p = v;
          lead = c;
        }
    }
    if (l.is_zero()) throw std::domain_error("division by zero");
    const F inv = F(1) / lead;
    Polynomial q, r = *this;
    while (!r.is_zero()) {
      // Cancel a term of highest x_p-exponent; new terms only appear one
      // exponent lower, so this terminates.
      const Term* top = nullptr;
      for (const auto& t : r.t_)
        if (!top || exponent(t.first, p) > exponent(top->first, p)) top = &t;
      if (exponent(top->first, p) == 0) throw std::domain_error("inexact division by a linear form");
      Polynomial step = monomial(top->first - var_monomial(p), top->second * inv);
      q += step;
      r -= step * l;
    }
    return q;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : t_) {
      std::string coeff = to_string(c);
      std::string mono;
      for (std::size_t v = 0; v < 8; ++v) {
        int e = exponent(m, v);
        if (!e) continue;
        if (!mono.empty()) mono += '*';
        mono += v < names.size() ? names[v] : "x" + std::to_string(v + 1);
        if (e > 1) mono += "^" + std::to_string(e);
      }
      std::string term;
      if (mono.empty()) term = coeff;
      else if (coeff == "1") term = mono;
      else if (coeff == "-1") term = "-" + mono;
      else term = (coeff.find_first_of("+*") != std::string::npos ? "(" + coeff + ")" : coeff) + "*" + mono;
      if (!first && term[0] != '-') out += '+';
      out += term;
      first = false;
    }
    return out;
  }

 private:
  static Polynomial from_raw(std::vector<Term> raw) {
    std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    Polynomial p;
    for (auto& t : raw) {
      if (!p.t_.empty() && p.t_.back().first == t.first) p.t_.back().second += t.second;
      else p.t_.push_back(std::move(t));
      if (hecat::is_zero(p.t_.back().second)) p.t_.pop_back();
    }
    return p;
  }
  static Polynomial combine(const Polynomial& a, const Polynomial& b, const F& sb) {
    Polynomial p;
    p.t_.reserve(a.t_.size() + b.t_.size());
    std::size_t i = 0, j = 0;
    while (i < a.t_.size() || j < b.t_.size()) {
      if (j == b.t_.size() || (i < a.t_.size() && a.t_[i].first < b.t_[j].first)) {
        p.t_.push_back(a.t_[i++]);
      } else if (i == a.t_.size() || b.t_[j].first < a.t_[i].first) {
        p.t_.emplace_back(b.t_[j].first, b.t_[j].second * sb);
        ++j;
      } else {
        F c = a.t_[i].second + b.t_[j].second * sb;
        if (!hecat::is_zero(c)) p.t_.emplace_back(a.t_[i].first, c);
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::vector<Term> t_;
};

/// w . f: the ring automorphism induced by the matrix of w.
template <class F>
Polynomial<F> act(const CoxeterSystem<F>& sys, int w, const Polynomial<F>& f) {
  return f.substitute(sys.matrix(w));
}

template <class F>
Polynomial<F> simple_root(const CoxeterSystem<F>& sys, int s) {
  return Polynomial<F>::linear(sys.root(s));
}

/// Divided difference (f - s f) / alpha_s.
template <class F>
Polynomial<F> demazure(const CoxeterSystem<F>& sys, int s, const Polynomial<F>& f) {
  sys.group().check_generator(s);
  return (f - act(sys, sys.group().generator(s), f)).divide_by_linear(simple_root(sys, s));
}

template <class F>
Polynomial<F> random_polynomial(std::mt19937_64& rng, std::size_t nvars, int max_degree, int terms = 4) {
  std::uniform_int_distribution<int> deg(0, max_degree), coef(-3, 3);
  Polynomial<F> p;
  for (int i = 0; i < terms; ++i) {
    auto ms = monomials_of_degree(nvars, deg(rng));
    if (ms.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
    p += Polynomial<F>::monomial(ms[pick(rng)], F(coef(rng)));
  }
  return p;
}

}  // namespace hecat
