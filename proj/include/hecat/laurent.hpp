#pragma once

// Integer Laurent polynomials in v, two-variable Laurent polynomials in (a, v),
// and fractions with denominators (1 - v^2)^k as produced by Hilbert series
// and Markov traces.

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace hecat {

namespace detail {
inline void append_term(std::ostringstream& os, bool& first, long long c, const std::string& mono) {
  if (c == 0) return;
  if (c < 0) os << (first ? "-" : "-");
  else if (!first) os << "+";
  long long m = c < 0 ? -c : c;
  if (mono.empty()) os << m;
  else if (m != 1) os << m << "*" << mono;
  else os << mono;
  first = false;
}
inline std::string power(const char* var, int e) {
  if (e == 0) return "";
  if (e == 1) return var;
  return std::string(var) + "^" + std::to_string(e);
}
}  // namespace detail

/// Finitely supported map from exponents of v to integer coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long long constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) c_[0] = constant;
  }
  static LaurentPoly monomial(int exponent, long long coeff = 1) {
    LaurentPoly p;
    if (coeff != 0) p.c_[exponent] = coeff;
    return p;
  }
  static LaurentPoly v() { return monomial(1); }

  const std::map<int, long long>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long long coeff(int e) const {
    auto it = c_.find(e);
    return it == c_.end() ? 0 : it->second;
  }
  int min_degree() const { return c_.begin()->first; }
  int max_degree() const { return c_.rbegin()->first; }

  LaurentPoly bar() const {
    LaurentPoly p;
    for (const auto& [e, x] : c_) p.c_[-e] = x;
    return p;
  }
  LaurentPoly shifted(int k) const {
    LaurentPoly p;
    for (const auto& [e, x] : c_) p.c_[e + k] = x;
    return p;
  }
  long long evaluate_at_one() const {
    long long s = 0;
    for (const auto& [e, x] : c_) s += x;
    return s;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, x] : o.c_) add(e, x);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, x] : o.c_) add(e, -x);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly p;
    for (const auto& [e, x] : c_) p.c_[e] = -x;
    return p;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (const auto& [e, x] : a.c_)
      for (const auto& [f, y] : b.c_) p.add(e + f, x * y);
    return p;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  void add(int e, long long x) {
    if (x == 0) return;
    auto& slot = c_[e];
    slot += x;
    if (slot == 0) c_.erase(e);
  }

  /// Canonical text form, e.g. "v^-1+v" or "2+3*v^2"; zero prints as "0".
  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, x] : c_) detail::append_term(os, first, x, detail::power("v", e));
    return os.str();
  }

 private:
  std::map<int, long long> c_;
};

inline LaurentPoly parse_laurent(const std::string& text);

/// Two-variable integer Laurent polynomial in a (first exponent) and v.
class Laurent2 {
 public:
  using Key = std::pair<int, int>;
  Laurent2() = default;
  Laurent2(long long constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) c_[{0, 0}] = constant;
  }
  static Laurent2 monomial(int a_exp, int v_exp, long long coeff = 1) {
    Laurent2 p;
    if (coeff != 0) p.c_[{a_exp, v_exp}] = coeff;
    return p;
  }
  static Laurent2 from_v(const LaurentPoly& p) {
    Laurent2 r;
    for (const auto& [e, x] : p.terms()) r.add(0, e, x);
    return r;
  }

  const std::map<Key, long long>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long long coeff(int a_exp, int v_exp) const {
    auto it = c_.find({a_exp, v_exp});
    return it == c_.end() ? 0 : it->second;
  }
  int min_v() const {
    int m = c_.begin()->first.second;
    for (const auto& [k, x] : c_) m = std::min(m, k.second);
    return m;
  }
  int max_v() const {
    int m = c_.begin()->first.second;
    for (const auto& [k, x] : c_) m = std::max(m, k.second);
    return m;
  }

  void add(int a_exp, int v_exp, long long x) {
    if (x == 0) return;
    auto& slot = c_[{a_exp, v_exp}];
    slot += x;
    if (slot == 0) c_.erase({a_exp, v_exp});
  }
  Laurent2& operator+=(const Laurent2& o) {
    for (const auto& [k, x] : o.c_) add(k.first, k.second, x);
    return *this;
  }
  Laurent2& operator-=(const Laurent2& o) {
    for (const auto& [k, x] : o.c_) add(k.first, k.second, -x);
    return *this;
  }
  friend Laurent2 operator+(Laurent2 a, const Laurent2& b) { return a += b; }
  friend Laurent2 operator-(Laurent2 a, const Laurent2& b) { return a -= b; }
  Laurent2 operator-() const { return Laurent2() - *this; }
  friend Laurent2 operator*(const Laurent2& a, const Laurent2& b) {
    Laurent2 p;
    for (const auto& [k, x] : a.c_)
      for (const auto& [l, y] : b.c_) p.add(k.first + l.first, k.second + l.second, x * y);
    return p;
  }
  Laurent2& operator*=(const Laurent2& o) { return *this = *this * o; }
  friend bool operator==(const Laurent2& a, const Laurent2& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Laurent2& a, const Laurent2& b) { return !(a == b); }

  /// Drops every term whose v-exponent exceeds `max_v`.
  Laurent2 truncated(int max_v) const {
    Laurent2 p;
    for (const auto& [k, x] : c_)
      if (k.second <= max_v) p.c_[k] = x;
    return p;
  }
  /// Substitutes v -> v^{-1} and a -> a^{-1}.
  Laurent2 inverted() const {
    Laurent2 p;
    for (const auto& [k, x] : c_) p.c_[{-k.first, -k.second}] = x;
    return p;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, x] : c_) {
      std::string a = detail::power("a", k.first);
      std::string v = detail::power("v", k.second);
      std::string mono = a.empty() ? v : (v.empty() ? a : a + "*" + v);
      detail::append_term(os, first, x, mono);
    }
    return os.str();
  }

 private:
  std::map<Key, long long> c_;
};

/// (1 - v^2)^k as a Laurent2.
inline Laurent2 one_minus_v2_power(int k) {
  Laurent2 p = 1;
  Laurent2 f = Laurent2(1) - Laurent2::monomial(0, 2);
  for (int i = 0; i < k; ++i) p *= f;
  return p;
}

/// num / (1 - v^2)^den_power, kept reduced whenever the numerator is divisible.
class VFraction {
 public:
  VFraction() = default;
  VFraction(Laurent2 num, int den_power = 0) : num_(std::move(num)), den_(den_power) {  // NOLINT
    if (den_ < 0) {
      num_ *= one_minus_v2_power(-den_);
      den_ = 0;
    }
    reduce();
  }

  const Laurent2& numerator() const { return num_; }
  int denominator_power() const { return den_; }

  friend VFraction operator+(const VFraction& x, const VFraction& y) {
    int d = std::max(x.den_, y.den_);
    return {x.num_ * one_minus_v2_power(d - x.den_) + y.num_ * one_minus_v2_power(d - y.den_), d};
  }
  friend VFraction operator-(const VFraction& x, const VFraction& y) {
    int d = std::max(x.den_, y.den_);
    return {x.num_ * one_minus_v2_power(d - x.den_) - y.num_ * one_minus_v2_power(d - y.den_), d};
  }
  friend VFraction operator*(const VFraction& x, const VFraction& y) {
    return {x.num_ * y.num_, x.den_ + y.den_};
  }
  friend bool operator==(const VFraction& x, const VFraction& y) {
    int d = std::max(x.den_, y.den_);
    return x.num_ * one_minus_v2_power(d - x.den_) == y.num_ * one_minus_v2_power(d - y.den_);
  }
  friend bool operator!=(const VFraction& x, const VFraction& y) { return !(x == y); }

  /// Power-series expansion in v, keeping v-exponents <= max_v.
  Laurent2 series(int max_v) const {
    if (num_.is_zero()) return {};
    Laurent2 geo = 1;  // (1 - v^2)^{-den} truncated
    int lo = num_.min_v();
    Laurent2 inv_step;
    for (int j = 2; lo + j <= max_v; j += 2) inv_step.add(0, j, 1);
    Laurent2 unit_series = Laurent2(1) + inv_step;  // 1/(1-v^2)
    for (int i = 0; i < den_; ++i) geo = (geo * unit_series).truncated(max_v - lo);
    return (num_ * geo).truncated(max_v);
  }

  std::string str() const {
    if (den_ == 0) return num_.str();
    return "(" + num_.str() + ")/(1-v^2)^" + std::to_string(den_);
  }

 private:
  // Divides out factors of (1 - v^2) while exact.
  void reduce() {
    while (den_ > 0 && !num_.is_zero()) {
      Laurent2 q;
      if (!divide_one_minus_v2(num_, q)) break;
      num_ = std::move(q);
      --den_;
    }
    if (num_.is_zero()) den_ = 0;
  }
  static bool divide_one_minus_v2(const Laurent2& p, Laurent2& quotient) {
    std::map<int, std::map<int, long long>> by_a;
    for (const auto& [k, x] : p.terms()) by_a[k.first][k.second] = x;
    Laurent2 q;
    for (const auto& [a, poly] : by_a) {
      int lo = poly.begin()->first, hi = poly.rbegin()->first;
      std::map<int, long long> qs;
      for (int j = lo; j <= hi; ++j) {
        long long n = poly.count(j) ? poly.at(j) : 0;
        long long prev = qs.count(j - 2) ? qs.at(j - 2) : 0;
        qs[j] = n + prev;
      }
      if (qs[hi] != 0 || (hi - 1 >= lo && qs[hi - 1] != 0)) return false;
      for (const auto& [j, x] : qs)
        if (j <= hi - 2) q.add(a, j, x);
    }
    quotient = std::move(q);
    return true;
  }

  Laurent2 num_;
  int den_ = 0;
};

inline LaurentPoly parse_laurent(const std::string& text) {
  // Accepts the output of LaurentPoly::str().
  LaurentPoly p;
  std::size_t i = 0;
  if (text == "0") return p;
  while (i < text.size()) {
    long long sign = 1;
    if (text[i] == '+') ++i;
    else if (text[i] == '-') {
      sign = -1;
      ++i;
    }
    long long coeff = 1;
    bool have_num = false;
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      coeff = std::stoll(text.substr(i, j - i));
      have_num = true;
      i = j;
    }
    int exp = 0;
    if (i < text.size() && text[i] == '*') ++i;
    if (i < text.size() && text[i] == 'v') {
      ++i;
      exp = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t k = i;
        if (k < text.size() && text[k] == '-') ++k;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        exp = std::stoi(text.substr(i, k - i));
        i = k;
      }
    } else if (!have_num) {
      throw std::invalid_argument("bad Laurent polynomial: " + text);
    }
    p.add(exp, sign * coeff);
  }
  return p;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }
inline std::ostream& operator<<(std::ostream& os, const Laurent2& p) { return os << p.str(); }
inline std::ostream& operator<<(std::ostream& os, const VFraction& p) { return os << p.str(); }

}  // namespace hecat
