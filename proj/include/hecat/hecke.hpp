#pragma once

// Hecke algebra of a finite Coxeter group over Z[v, v^-1], normalized by
// H_s^2 = 1 + (v^-1 - v) H_s and b_s = H_s + v.

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hecat/coxeter.hpp"
#include "hecat/errors.hpp"
#include "hecat/laurent.hpp"

namespace hecat {

enum class HeckeBasis { standard, kl };

/// Finite sum of group elements with Laurent coefficients, tagged by basis.
class HeckeElement {
 public:
  HeckeElement() = default;
  explicit HeckeElement(GroupPtr g, HeckeBasis basis = HeckeBasis::standard) : g_(std::move(g)), basis_(basis) {}

  static HeckeElement basis_element(GroupPtr g, int w, LaurentPoly c = 1, HeckeBasis basis = HeckeBasis::standard) {
    HeckeElement x(std::move(g), basis);
    x.add(w, c);
    return x;
  }

  const GroupPtr& group() const { return g_; }
  HeckeBasis basis() const { return basis_; }
  const std::map<int, LaurentPoly>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  LaurentPoly coeff(int w) const {
    auto it = c_.find(w);
    return it == c_.end() ? LaurentPoly() : it->second;
  }

  void add(int w, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto& slot = c_[w];
    slot += c;
    if (slot.is_zero()) c_.erase(w);
  }

  HeckeElement& operator+=(const HeckeElement& o) {
    check_compatible(o);
    if (!g_) *this = HeckeElement(o.g_, o.basis_);
    for (const auto& [w, c] : o.c_) add(w, c);
    return *this;
  }
  HeckeElement& operator-=(const HeckeElement& o) {
    check_compatible(o);
    if (!g_) *this = HeckeElement(o.g_, o.basis_);
    for (const auto& [w, c] : o.c_) add(w, -c);
    return *this;
  }
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  HeckeElement scaled(const LaurentPoly& p) const {
    HeckeElement x(g_, basis_);
    for (const auto& [w, c] : c_) x.add(w, c * p);
    return x;
  }
  friend bool operator==(const HeckeElement& a, const HeckeElement& b) {
    return a.c_ == b.c_ && (a.c_.empty() || (a.basis_ == b.basis_ && a.g_ == b.g_));
  }
  friend bool operator!=(const HeckeElement& a, const HeckeElement& b) { return !(a == b); }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string out;
    const char* sym = basis_ == HeckeBasis::standard ? "H" : "b";
    for (const auto& [w, c] : c_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")*" + sym + "_" + g_->element_string(w);
    }
    return out;
  }

 private:
  void check_compatible(const HeckeElement& o) const {
    if (g_ && o.g_ && g_ != o.g_) throw SystemMismatch("Hecke elements from different systems");
    if (g_ && o.g_ && basis_ != o.basis_ && !c_.empty() && !o.c_.empty())
      throw BasisMismatch("adding elements written in different bases");
  }

  GroupPtr g_;
  HeckeBasis basis_ = HeckeBasis::standard;
  std::map<int, LaurentPoly> c_;
};

/// Hecke algebra of one Coxeter group, with cached bar images and KL basis.
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(GroupPtr g) : g_(std::move(g)) {}

  const GroupPtr& group_ptr() const { return g_; }
  const CoxeterGroup& group() const { return *g_; }

  HeckeElement zero() const { return HeckeElement(g_); }
  HeckeElement one() const { return standard(g_->identity()); }
  HeckeElement standard(int w, LaurentPoly c = 1) const { return HeckeElement::basis_element(g_, w, std::move(c)); }

  /// x * H_s.
  HeckeElement right_mult_generator(const HeckeElement& x, int s) const {
    HeckeElement out(g_);
    const LaurentPoly q = LaurentPoly::monomial(-1) - LaurentPoly::v();
    for (const auto& [w, c] : x.terms()) {
      const int ws = g_->right_mult(w, s);
      out.add(ws, c);
      if (g_->length(ws) < g_->length(w)) out.add(w, c * q);
    }
    return out;
  }
  /// H_s * x.
  HeckeElement left_mult_generator(int s, const HeckeElement& x) const {
    HeckeElement out(g_);
    const LaurentPoly q = LaurentPoly::monomial(-1) - LaurentPoly::v();
    for (const auto& [w, c] : x.terms()) {
      const int sw = g_->left_mult(s, w);
      out.add(sw, c);
      if (g_->length(sw) < g_->length(w)) out.add(w, c * q);
    }
    return out;
  }

  HeckeElement mult(const HeckeElement& x, const HeckeElement& y) const {
    check(x);
    check(y);
    HeckeElement out(g_);
    for (const auto& [w, c] : y.terms()) {
      HeckeElement part = x;
      for (int s : g_->word(w)) part = right_mult_generator(part, s);
      out += part.scaled(c);
    }
    return out;
  }

  /// Bar involution: v -> v^-1, H_w -> (H_{w^-1})^-1.
  HeckeElement bar(const HeckeElement& x) const {
    check(x);
    ensure_tables();
    HeckeElement out(g_);
    for (const auto& [w, c] : x.terms()) out += bar_std_[static_cast<std::size_t>(w)].scaled(c.bar());
    return out;
  }

  /// Kazhdan-Lusztig basis element b_w, written in the standard basis.
  const HeckeElement& kl(int w) const {
    ensure_tables();
    return kl_[static_cast<std::size_t>(w)];
  }
  /// The polynomial h_{x,w}: coefficient of H_x in b_w.
  LaurentPoly kl_coefficient(int x, int w) const { return kl(w).coeff(x); }

  /// Re-expresses a standard-basis element in the KL basis (triangular solve).
  HeckeElement to_kl(const HeckeElement& x) const {
    check(x);
    HeckeElement rest = x, out(g_, HeckeBasis::kl);
    while (!rest.is_zero()) {
      int top = rest.terms().begin()->first;
      for (const auto& [w, c] : rest.terms())
        if (g_->length(w) > g_->length(top)) top = w;
      const LaurentPoly c = rest.coeff(top);
      out.add(top, c);
      rest -= kl(top).scaled(c);
    }
    return out;
  }
  HeckeElement to_standard(const HeckeElement& x) const {
    if (x.group() && x.group() != g_) throw SystemMismatch("element from another system");
    if (x.basis() == HeckeBasis::standard) return x;
    HeckeElement out(g_);
    for (const auto& [w, c] : x.terms()) out += kl(w).scaled(c);
    return out;
  }

  /// Coefficient of H_e.
  LaurentPoly epsilon(const HeckeElement& x) const { return x.coeff(g_->identity()); }

  /// Anti-involution H_w -> H_{w^-1}.
  HeckeElement omega(const HeckeElement& x) const {
    check(x);
    HeckeElement out(g_);
    for (const auto& [w, c] : x.terms()) out.add(g_->inverse(w), c);
    return out;
  }

  /// Graded rank of Hom(B, C) for characters x = ch B, y = ch C:
  /// epsilon(x * omega(bar y)). Linear in x, antilinear in y.
  LaurentPoly pairing(const HeckeElement& x, const HeckeElement& y) const {
    return epsilon(mult(to_standard(x), omega(bar(to_standard(y)))));
  }

  /// b_{s_1} ... b_{s_k}.
  HeckeElement bs_product(const Word& word) const {
    HeckeElement x = one();
    for (int s : word) x = mult(x, kl(g_->generator(s)));
    return x;
  }

 private:
  void check(const HeckeElement& x) const {
    if (x.group() && x.group() != g_) throw SystemMismatch("element from another system");
    if (x.basis() != HeckeBasis::standard && !x.is_zero())
      throw BasisMismatch("operation needs the standard basis");
  }

  void ensure_tables() const {
    std::call_once(once_, [this] {
      const std::size_t n = g_->size();
      const LaurentPoly shift = LaurentPoly::v() - LaurentPoly::monomial(-1);
      bar_std_.assign(n, HeckeElement(g_));
      bar_std_[0] = one();
      // bar(H_w) = bar(H_{ws}) (H_s + v - v^-1) with s the last letter.
      for (std::size_t w = 1; w < n; ++w) {
        const Word& word = g_->word(static_cast<int>(w));
        const int s = word.back();
        const HeckeElement& prev = bar_std_[static_cast<std::size_t>(g_->right_mult(static_cast<int>(w), s))];
        bar_std_[w] = right_mult_generator(prev, s) + prev.scaled(shift);
      }
      kl_.assign(n, HeckeElement(g_));
      kl_[0] = one();
      for (std::size_t w = 1; w < n; ++w) {
        const int s = g_->word(static_cast<int>(w)).front();
        const int rest = g_->left_mult(s, static_cast<int>(w));
        const HeckeElement& br = kl_[static_cast<std::size_t>(rest)];
        HeckeElement p = left_mult_generator(s, br) + br.scaled(LaurentPoly::v());
        // Remove constant terms below the top, longest first.
        for (int x = static_cast<int>(w) - 1; x >= 0; --x) {
          const long long mu = p.coeff(x).coeff(0);
          if (mu != 0) p -= kl_[static_cast<std::size_t>(x)].scaled(LaurentPoly(mu));
        }
        kl_[w] = std::move(p);
      }
    });
  }

  GroupPtr g_;
  mutable std::once_flag once_;
  mutable std::vector<HeckeElement> bar_std_;
  mutable std::vector<HeckeElement> kl_;
};

// ---------------------------------------------------------------------------
// Markov trace oracle, built on an independent permutation model of the type A
// Hecke algebra (no Coxeter-group tables involved).

namespace trace {

using Perm = std::vector<int>;  // one-line notation, values 0..n-1
using PermElement = std::map<Perm, LaurentPoly>;

inline Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline void add_term(PermElement& x, const Perm& p, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto& slot = x[p];
  slot += c;
  if (slot.is_zero()) x.erase(p);
}

/// x * H_{s_i} (i is 0-based, swapping positions i and i+1).
inline PermElement right_mult(const PermElement& x, int i) {
  const LaurentPoly q = LaurentPoly::monomial(-1) - LaurentPoly::v();
  PermElement out;
  for (const auto& [w, c] : x) {
    Perm ws = w;
    std::swap(ws[static_cast<std::size_t>(i)], ws[static_cast<std::size_t>(i + 1)]);
    add_term(out, ws, c);
    if (w[static_cast<std::size_t>(i)] > w[static_cast<std::size_t>(i + 1)]) add_term(out, w, c * q);
  }
  return out;
}

/// x * H_{s_i}^{-1} = x * (H_{s_i} + v - v^-1).
inline PermElement right_mult_inverse(const PermElement& x, int i) {
  PermElement out = right_mult(x, i);
  const LaurentPoly shift = LaurentPoly::v() - LaurentPoly::monomial(-1);
  for (const auto& [w, c] : x) add_term(out, w, c * shift);
  return out;
}

inline PermElement mult(const PermElement& x, const PermElement& y) {
  PermElement out;
  for (const auto& [w, c] : y) {
    // Reduced word of w by bubble sort from the right.
    Perm p = w;
    std::vector<int> word;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i] > p[i + 1]) {
          std::swap(p[i], p[i + 1]);
          word.push_back(static_cast<int>(i));
          changed = true;
        }
    }
    // p = w * s_{word[0]} * ... so w = identity * s_{word.back()} ... s_{word[0]}.
    PermElement part = x;
    for (auto it = word.rbegin(); it != word.rend(); ++it) part = right_mult(part, *it);
    for (const auto& [u, d] : part) add_term(out, u, d * c);
  }
  return out;
}

/// Parameters of the trace: tau_{n+1}(x) = delta tau_n(x) for x in H_n and
/// tau_{n+1}(x H_{s_n} y) = markov * tau_n(x y).
struct Convention {
  VFraction delta;
  VFraction markov;
};

/// delta = (1 + a v^2) / (1 - v^2), markov = v^-1: matches the Hochschild
/// homology of a polynomial ring in one variable.
inline Convention hochschild_convention() {
  return {VFraction(Laurent2(1) + Laurent2::monomial(1, 2), 1), VFraction(Laurent2::monomial(0, -1))};
}
/// Same trace after substituting a -> -a^-2 v^-2, which is the variable of
/// the skein relation a P(+) - a^-1 P(-) = (v^-1 - v) P(0).
inline Convention homfly_convention() {
  return {VFraction(Laurent2(1) - Laurent2::monomial(-2, 0), 1), VFraction(Laurent2::monomial(0, -1))};
}

class Trace {
 public:
  explicit Trace(Convention c) : c_(std::move(c)) {}

  VFraction operator()(const PermElement& x) const {
    VFraction total;
    for (const auto& [w, c] : x) total = total + VFraction(Laurent2::from_v(c)) * basis_trace(w);
    return total;
  }

 private:
  VFraction basis_trace(const Perm& w) const {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    const int n = static_cast<int>(w.size());
    VFraction r;
    if (n <= 1) {
      r = VFraction(1);
    } else if (w.back() == n - 1) {
      Perm u(w.begin(), w.end() - 1);
      r = c_.delta * basis_trace(u);
    } else {
      // w = u s_{n-1} s_{n-2} ... s_p with u fixing n-1.
      int p = 0;
      while (w[static_cast<std::size_t>(p)] != n - 1) ++p;
      Perm u = w;
      for (int i = p; i < n - 1; ++i) std::swap(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(i + 1)]);
      Perm small_u(u.begin(), u.end() - 1);
      PermElement y{{identity_perm(n - 1), 1}};
      for (int i = n - 3; i >= p; --i) y = right_mult(y, i);
      PermElement x{{small_u, 1}};
      r = c_.markov * (*this)(mult(x, y));
    }
    memo_.emplace(w, r);
    return r;
  }

  Convention c_;
  mutable std::map<Perm, VFraction> memo_;
};

/// h(beta) in the permutation model: sigma_i -> H_{s_i}, sigma_i^-1 -> H_{s_i}^-1.
inline PermElement braid_image(int strands, const BraidWord& b) {
  PermElement x{{identity_perm(strands), 1}};
  for (const auto& l : b) {
    if (l.gen < 0 || l.gen + 1 >= strands) throw NotTypeA("braid generator outside the strand range");
    x = l.inverse ? right_mult_inverse(x, l.gen) : right_mult(x, l.gen);
  }
  return x;
}

}  // namespace trace

/// Markov trace tau_n of a type-A Hecke element on `strands` strands.
inline VFraction jones_ocneanu_trace(const HeckeElement& x, int strands,
                                     const trace::Convention& conv = trace::homfly_convention()) {
  const CoxeterGroup& g = *x.group();
  const auto& m = g.coxeter_matrix();
  bool type_a = static_cast<int>(g.rank()) == strands - 1;
  for (std::size_t i = 0; type_a && i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      const int want = i == j ? 1 : (i + 1 == j || j + 1 == i) ? 3 : 2;
      if (m[i][j] != want) type_a = false;
    }
  if (!type_a) throw NotTypeA("trace needs the type A system on " + std::to_string(strands) + " strands");
  if (x.basis() != HeckeBasis::standard) throw BasisMismatch("trace needs the standard basis");
  trace::PermElement p;
  for (const auto& [w, c] : x.terms()) {
    trace::PermElement y{{trace::identity_perm(strands), 1}};
    for (int s : g.word(w)) y = trace::right_mult(y, s);
    for (const auto& [u, d] : y) trace::add_term(p, u, d * c);
  }
  return trace::Trace(conv)(p);
}

/// HOMFLY-PT polynomial of the closure of a braid on `strands` strands,
/// normalized to 1 on the unknot and satisfying
/// a P(+) - a^-1 P(-) = (v^-1 - v) P(0).
inline VFraction homfly(int strands, const BraidWord& b) {
  if (strands < 1) throw NotTypeA("need at least one strand");
  int writhe = 0;
  for (const auto& l : b) writhe += l.inverse ? -1 : 1;
  VFraction t = trace::Trace(trace::homfly_convention())(trace::braid_image(strands, b));
  return VFraction(Laurent2::monomial(strands - 1 - writhe, strands - 1)) * t;
}

/// Mirror image: a -> a^-1, v -> v^-1.
inline VFraction mirror(const VFraction& p) {
  // (1 - v^-2)^-1 = -v^2 (1 - v^2)^-1
  Laurent2 num = p.numerator().inverted();
  const int k = p.denominator_power();
  Laurent2 factor = Laurent2::monomial(0, 2 * k, (k % 2) ? -1 : 1);
  return VFraction(num * factor, k);
}

/// Second oracle: HOMFLY-PT of the 2-strand torus link T(2, k) from the
/// skein recursion alone, seeded by the unknot (k = 1) and the 2-component
/// unlink (k = 0).
inline VFraction skein_torus2(int k) {
  const VFraction z(Laurent2::monomial(0, -1) - Laurent2::monomial(0, 1));
  const VFraction a(Laurent2::monomial(1, 0)), ainv(Laurent2::monomial(-1, 0));
  VFraction p0(Laurent2::monomial(1, 1) - Laurent2::monomial(-1, 1), 1);  // (a - a^-1) / (v^-1 - v)
  VFraction p1(1);
  if (k == 0) return p0;
  if (k == 1) return p1;
  if (k > 1) {
    for (int i = 2; i <= k; ++i) {
      VFraction next = ainv * (z * p1 + ainv * p0);
      p0 = p1;
      p1 = next;
    }
    return p1;
  }
  // Downward: P(k-2) = a (a P(k) - z P(k-1)).
  VFraction hi = p1, lo = p0;  // P(1), P(0)
  for (int i = 0; i > k; --i) {
    VFraction next = a * (a * hi - z * lo);
    hi = lo;
    lo = next;
  }
  return lo;
}

}  // namespace hecat
