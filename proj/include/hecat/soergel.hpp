#pragma once

// Soergel bimodules over the polynomial ring of a realization. A bimodule is
// stored as a free left R-module with a homogeneous basis and, for each ring
// variable x_j, the matrix of right multiplication by x_j:
//     b_i . x_j = sum_k M_j(k, i) b_k.
// A map F: B -> C is the matrix with F(b_i) = sum_k F(k, i) c_k; it is a
// bimodule map iff F M^B_j = M^C_j F for every j.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hecat/coxeter.hpp"
#include "hecat/errors.hpp"
#include "hecat/hecke.hpp"
#include "hecat/laurent.hpp"
#include "hecat/linalg.hpp"
#include "hecat/polynomial.hpp"
#include "hecat/rational.hpp"

namespace hecat {

template <class F>
class PolyMatrix {
 public:
  using Poly = Polynomial<F>;

  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static PolyMatrix identity(std::size_t n) { return scalar(n, F(1)); }
  static PolyMatrix scalar(std::size_t n, const F& c) {
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly(c);
    return m;
  }
  static PolyMatrix from_matrix(const Matrix<F>& a) {
    PolyMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = Poly(a(i, j));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Poly& p) { return p.is_zero(); });
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("polynomial matrix product: shape mismatch");
    PolyMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Poly& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) {
    a.check_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) {
    a.check_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  PolyMatrix scaled(const F& c) const {
    PolyMatrix m = *this;
    for (auto& p : m.data_) p = p.scaled(c);
    return m;
  }
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

  Matrix<F> evaluate(const std::vector<F>& point) const {
    Matrix<F> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).evaluate(point);
    return m;
  }
  /// Entries evaluated at the origin.
  Matrix<F> constant_part() const {
    Matrix<F> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).constant_term();
    return m;
  }
  PolyMatrix columns(const std::vector<std::size_t>& idx) const {
    PolyMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

 private:
  void check_shape(const PolyMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("polynomial matrix sum: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

/// The polynomial ring of a realization together with its Hecke algebra.
/// Bimodules over the same ring share one PolyRing object.
template <class F>
class PolyRing {
 public:
  explicit PolyRing(CoxeterSystem<F> sys) : sys_(std::move(sys)), hecke_(sys_.group_ptr()) {}

  static std::shared_ptr<const PolyRing> make(CoxeterSystem<F> sys) {
    return std::make_shared<const PolyRing>(std::move(sys));
  }

  const CoxeterSystem<F>& system() const { return sys_; }
  const CoxeterGroup& group() const { return sys_.group(); }
  const GroupPtr& group_ptr() const { return sys_.group_ptr(); }
  const HeckeAlgebra& hecke() const { return hecke_; }
  std::size_t num_vars() const { return sys_.num_vars(); }
  Polynomial<F> variable(std::size_t j) const { return Polynomial<F>::variable(j); }
  Polynomial<F> root(int s) const { return simple_root(sys_, s); }

 private:
  CoxeterSystem<F> sys_;
  HeckeAlgebra hecke_;
};

template <class F>
using RingPtr = std::shared_ptr<const PolyRing<F>>;

template <class F>
class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(RingPtr<F> ring, std::vector<int> degrees, std::vector<PolyMatrix<F>> right,
           std::vector<std::string> labels, HeckeElement ch, int shift = 0)
      : ring_(std::move(ring)),
        degrees_(std::move(degrees)),
        right_(std::move(right)),
        labels_(std::move(labels)),
        ch_(std::move(ch)),
        shift_(shift) {}

  const RingPtr<F>& ring() const { return ring_; }
  std::size_t rank() const { return degrees_.size(); }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const PolyMatrix<F>& right_action(std::size_t j) const { return right_[j]; }
  const std::vector<PolyMatrix<F>>& right_actions() const { return right_; }
  const HeckeElement& character() const { return ch_; }
  /// Accumulated grading shift <k> relative to how the object was built.
  int shift() const { return shift_; }

  int min_degree() const { return degrees_.empty() ? 0 : *std::min_element(degrees_.begin(), degrees_.end()); }
  int max_degree() const { return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end()); }
  int spread() const { return max_degree() - min_degree(); }

  /// B<k>: every basis degree drops by k and the character gains v^k.
  Bimodule shifted(int k) const {
    Bimodule b = *this;
    for (int& d : b.degrees_) d -= k;
    b.ch_ = ch_.scaled(LaurentPoly::monomial(k));
    b.shift_ += k;
    return b;
  }

  /// Matrix of right multiplication by an arbitrary polynomial.
  PolyMatrix<F> act_matrix(const Polynomial<F>& p) const {
    const std::size_t n = rank();
    PolyMatrix<F> out(n, n);
    for (const auto& [m, c] : p.terms()) {
      PolyMatrix<F> a = PolyMatrix<F>::identity(n);
      for (std::size_t j = 0; j < right_.size(); ++j)
        for (int e = exponent(m, j); e > 0; --e) a = right_[j] * a;
      out = out + a.scaled(c);
    }
    return out;
  }

  /// Checks commuting right actions and degree consistency; throws InvalidObject.
  void validate() const {
    const std::size_t n = rank();
    if (right_.size() != ring_->num_vars()) throw InvalidObject("one right-action matrix per variable is required");
    for (const auto& m : right_)
      if (m.rows() != n || m.cols() != n) throw InvalidObject("right-action matrix has the wrong shape");
    for (std::size_t j = 0; j < right_.size(); ++j) {
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
          const auto& p = right_[j](k, i);
          if (p.is_zero()) continue;
          const int e = degrees_[i] + 2 - degrees_[k];
          if (e < 0 || e % 2 || !p.is_homogeneous(e / 2))
            throw InvalidObject("right action does not respect the basis degrees");
        }
      for (std::size_t l = j + 1; l < right_.size(); ++l)
        if (right_[j] * right_[l] != right_[l] * right_[j]) throw InvalidObject("right actions do not commute");
    }
  }

 private:
  RingPtr<F> ring_;
  std::vector<int> degrees_;
  std::vector<PolyMatrix<F>> right_;
  std::vector<std::string> labels_;
  HeckeElement ch_;
  int shift_ = 0;
};

template <class F>
void check_same_ring(const Bimodule<F>& a, const Bimodule<F>& b) {
  if (a.ring() != b.ring()) throw RingMismatch("bimodules live over different rings");
}

/// The regular bimodule R.
template <class F>
Bimodule<F> unit_bimodule(const RingPtr<F>& ring) {
  std::vector<PolyMatrix<F>> right;
  for (std::size_t j = 0; j < ring->num_vars(); ++j) {
    PolyMatrix<F> m(1, 1);
    m(0, 0) = ring->variable(j);
    right.push_back(std::move(m));
  }
  return Bimodule<F>(ring, {0}, std::move(right), {""}, ring->hecke().one());
}

/// R (x)_{R^s} R <1> with left basis e0 = 1(x)1 (degree -1) and e1 = 1(x)alpha_s
/// (degree 1). Writing x_j = A + B alpha_s with A s-invariant and
/// B = <alpha_s^vee, x_j>/2 gives the right action.
template <class F>
Bimodule<F> generator_bimodule(const RingPtr<F>& ring, int s) {
  const auto& sys = ring->system();
  sys.group().check_generator(s);
  const Polynomial<F> alpha = ring->root(s);
  std::vector<PolyMatrix<F>> right;
  for (std::size_t j = 0; j < ring->num_vars(); ++j) {
    const F half = sys.pairing(s, j) / F(2);
    const Polynomial<F> a = ring->variable(j) - alpha.scaled(half);
    PolyMatrix<F> m(2, 2);
    m(0, 0) = a;
    m(1, 0) = Polynomial<F>(half);
    m(0, 1) = (alpha * alpha).scaled(half);
    m(1, 1) = a;
    right.push_back(std::move(m));
  }
  const HeckeAlgebra& h = ring->hecke();
  return Bimodule<F>(ring, {-1, 1}, std::move(right), {"0", "1"}, h.kl(sys.group().generator(s)));
}

/// B (x)_R C. Basis b_i (x) c_l, ordered with i outer. Moving a polynomial
/// across the middle turns C's right-action entries into right actions on B.
template <class F>
Bimodule<F> tensor_bimod(const Bimodule<F>& b, const Bimodule<F>& c) {
  check_same_ring(b, c);
  const std::size_t nb = b.rank(), nc = c.rank(), n = nb * nc;
  std::vector<int> degrees(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t l = 0; l < nc; ++l) {
      degrees[i * nc + l] = b.degree(i) + c.degree(l);
      labels[i * nc + l] = b.labels()[i] + c.labels()[l];
    }
  std::vector<PolyMatrix<F>> right;
  for (std::size_t j = 0; j < b.ring()->num_vars(); ++j) {
    PolyMatrix<F> m(n, n);
    const PolyMatrix<F>& mc = c.right_action(j);
    for (std::size_t mm = 0; mm < nc; ++mm)
      for (std::size_t l = 0; l < nc; ++l) {
        if (mc(mm, l).is_zero()) continue;
        const PolyMatrix<F> a = b.act_matrix(mc(mm, l));
        for (std::size_t k = 0; k < nb; ++k)
          for (std::size_t i = 0; i < nb; ++i)
            if (!a(k, i).is_zero()) m(k * nc + mm, i * nc + l) = a(k, i);
      }
    right.push_back(std::move(m));
  }
  HeckeElement ch = b.ring()->hecke().mult(b.character(), c.character());
  return Bimodule<F>(b.ring(), std::move(degrees), std::move(right), std::move(labels), std::move(ch),
                     b.shift() + c.shift());
}

template <class F>
Bimodule<F> bott_samelson(const RingPtr<F>& ring, const Word& word) {
  Bimodule<F> out = unit_bimodule(ring);
  for (int s : word) out = tensor_bimod(out, generator_bimodule(ring, s));
  return out;
}

template <class F>
HeckeElement character(const Bimodule<F>& b) {
  return b.character();
}

template <class F>
Bimodule<F> direct_sum(const Bimodule<F>& a, const Bimodule<F>& b) {
  check_same_ring(a, b);
  const std::size_t na = a.rank(), n = na + b.rank();
  std::vector<int> degrees = a.degrees();
  degrees.insert(degrees.end(), b.degrees().begin(), b.degrees().end());
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  std::vector<PolyMatrix<F>> right;
  for (std::size_t j = 0; j < a.ring()->num_vars(); ++j) {
    PolyMatrix<F> m(n, n);
    for (std::size_t k = 0; k < na; ++k)
      for (std::size_t i = 0; i < na; ++i) m(k, i) = a.right_action(j)(k, i);
    for (std::size_t k = 0; k < b.rank(); ++k)
      for (std::size_t i = 0; i < b.rank(); ++i) m(na + k, na + i) = b.right_action(j)(k, i);
    right.push_back(std::move(m));
  }
  return Bimodule<F>(a.ring(), std::move(degrees), std::move(right), std::move(labels), a.character() + b.character());
}

// ---------------------------------------------------------------------------
// Hom spaces.

/// Basis of the degree-d bimodule maps B -> C. Every basis map has a
/// distinguished coordinate (matrix entry and monomial) where it is 1 and all
/// other basis maps vanish, so coordinates of any map in the span are read off
/// directly.
template <class F>
struct HomSpace {
  struct Coordinate {
    std::size_t row, col;
    Monomial mono;
  };
  std::vector<PolyMatrix<F>> maps;
  std::vector<Coordinate> coords;

  std::size_t dim() const { return maps.size(); }
  std::vector<F> coordinates(const PolyMatrix<F>& f) const {
    std::vector<F> x;
    x.reserve(coords.size());
    for (const auto& c : coords) x.push_back(f(c.row, c.col).coeff(c.mono));
    return x;
  }
  PolyMatrix<F> combine(const std::vector<F>& x) const {
    PolyMatrix<F> out(maps.empty() ? 0 : maps[0].rows(), maps.empty() ? 0 : maps[0].cols());
    for (std::size_t a = 0; a < x.size(); ++a)
      if (!is_zero(x[a])) out = out + maps[a].scaled(x[a]);
    return out;
  }
};

namespace detail {

/// The linear system "F commutes with the right action" for degree-d maps,
/// with one unknown per (target row, source column, monomial).
template <class F>
struct HomSystem {
  struct Unknown {
    std::size_t k, i;
    Monomial mono;
  };
  std::vector<Unknown> unknowns;
  std::vector<SparseRow<F>> rows;
};

template <class F>
HomSystem<F> hom_system(const Bimodule<F>& b, const Bimodule<F>& c, int d) {
  check_same_ring(b, c);
  const std::size_t nb = b.rank(), nc = c.rank(), nv = b.ring()->num_vars();
  HomSystem<F> sys;
  auto& unknowns = sys.unknowns;
  for (std::size_t k = 0; k < nc; ++k)
    for (std::size_t i = 0; i < nb; ++i) {
      const int e = b.degree(i) + d - c.degree(k);
      if (e < 0 || e % 2) continue;
      for (Monomial m : monomials_of_degree(nv, e / 2)) unknowns.push_back({k, i, m});
    }
  if (unknowns.empty()) return sys;

  // Equations F M^B_j - M^C_j F = 0, keyed by (j, row, col, monomial).
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, Monomial>, std::size_t> eq_index;
  auto& rows = sys.rows;
  auto emit = [&](std::size_t j, std::size_t r, std::size_t col, const Polynomial<F>& p, std::size_t u,
                  const F& sign) {
    for (const auto& [m, x] : p.terms()) {
      auto key = std::make_tuple(j, r, col, m);
      auto it = eq_index.find(key);
      if (it == eq_index.end()) {
        it = eq_index.emplace(key, rows.size()).first;
        rows.emplace_back();
      }
      rows[it->second].emplace_back(u, sign * x);
    }
  };
  for (std::size_t j = 0; j < nv; ++j) {
    const PolyMatrix<F>& mb = b.right_action(j);
    const PolyMatrix<F>& mc = c.right_action(j);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto& [k, a, mono] = unknowns[u];
      const Polynomial<F> xm = Polynomial<F>::monomial(mono, F(1));
      for (std::size_t i = 0; i < nb; ++i)
        if (!mb(a, i).is_zero()) emit(j, k, i, xm * mb(a, i), u, F(1));
      for (std::size_t r = 0; r < nc; ++r)
        if (!mc(r, k).is_zero()) emit(j, r, a, xm * mc(r, k), u, F(-1));
    }
  }
  return sys;
}

}  // namespace detail

template <class F>
HomSpace<F> hom_space(const Bimodule<F>& b, const Bimodule<F>& c, int d) {
  const auto sys = detail::hom_system(b, c, d);
  HomSpace<F> out;
  if (sys.unknowns.empty()) return out;
  SparseEchelon<F> ech(sys.unknowns.size());
  for (const auto& r : sys.rows) ech.add(r);
  for (const auto& v : ech.kernel()) {
    PolyMatrix<F> f(c.rank(), b.rank());
    std::size_t free_col = 0;
    for (const auto& [u, x] : v) {
      const auto& unk = sys.unknowns[u];
      f(unk.k, unk.i) += Polynomial<F>::monomial(unk.mono, x);
      // each kernel vector has exactly one non-pivot entry, equal to 1
      if (!ech.is_pivot(u)) free_col = u;
    }
    const auto& unk = sys.unknowns[free_col];
    out.coords.push_back({unk.k, unk.i, unk.mono});
    out.maps.push_back(std::move(f));
  }
  return out;
}

/// Dimension of the degree-d bimodule maps B -> C.
template <class F>
std::size_t hom_dimension(const Bimodule<F>& b, const Bimodule<F>& c, int d) {
  const auto sys = detail::hom_system(b, c, d);
  if (sys.unknowns.empty()) return 0;
  SparseEchelon<F> ech(sys.unknowns.size());
  for (const auto& r : sys.rows) ech.add(r);
  return sys.unknowns.size() - ech.rank();
}

/// Basis of the degree-d bimodule maps B -> C.
template <class F>
std::vector<PolyMatrix<F>> hom_degree(const Bimodule<F>& b, const Bimodule<F>& c, int d) {
  return hom_space(b, c, d).maps;
}

template <class F>
bool is_bimodule_map(const Bimodule<F>& b, const Bimodule<F>& c, const PolyMatrix<F>& f) {
  for (std::size_t j = 0; j < b.ring()->num_vars(); ++j)
    if (f * b.right_action(j) != c.right_action(j) * f) return false;
  return true;
}

/// A generic point of the realization where the characters w.(x_1..x_N)
/// of all group elements are pairwise distinct, with those characters.
template <class F>
std::pair<std::vector<F>, std::vector<std::vector<F>>> separating_point(const CoxeterSystem<F>& sys,
                                                                        std::uint64_t seed = 11) {
  const CoxeterGroup& g = sys.group();
  const std::size_t nv = sys.num_vars();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-997, 997);
  std::vector<F> point;
  std::vector<std::vector<F>> eig(g.size());
  for (int attempt = 0;; ++attempt) {
    point.assign(nv, F(0));
    for (auto& p : point) p = F(dist(rng));
    bool distinct = true;
    for (int w : g.enumerate()) {
      std::vector<F> e;
      for (std::size_t j = 0; j < nv; ++j) e.push_back(act(sys, w, Polynomial<F>::variable(j)).evaluate(point));
      for (int u = 0; u < w; ++u) distinct = distinct && eig[static_cast<std::size_t>(u)] != e;
      eig[static_cast<std::size_t>(w)] = e;
    }
    if (distinct) return {point, eig};
    if (attempt > 20) throw InvalidObject("realization is not faithful enough to separate the group");
  }
}

/// For each w, the dimension of the joint eigenspace of the right action with
/// character w after specializing the left action at a generic point. A
/// Soergel bimodule localizes to a sum of standard bimodules, so these are the
/// multiplicities of the standard pieces.
template <class F>
std::vector<std::size_t> eigen_multiplicities(const Bimodule<F>& b) {
  const auto& sys = b.ring()->system();
  const std::size_t nv = b.ring()->num_vars(), n = b.rank();
  const auto [point, eig] = separating_point(sys);
  std::vector<Matrix<F>> at_point;
  for (std::size_t j = 0; j < nv; ++j) at_point.push_back(b.right_action(j).evaluate(point));
  std::vector<std::size_t> out;
  for (int w : sys.group().enumerate()) {
    Matrix<F> stacked(nv * n, n);
    for (std::size_t j = 0; j < nv; ++j)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          stacked(j * n + r, c) = at_point[j](r, c) - (r == c ? eig[static_cast<std::size_t>(w)][j] : F(0));
    out.push_back(n - rank(stacked));
  }
  return out;
}

/// Support of a bimodule: the w for which right multiplication by f agrees
/// with left multiplication by w.f on some subquotient.
template <class F>
std::vector<int> support(const Bimodule<F>& b) {
  std::vector<int> out;
  const auto m = eigen_multiplicities(b);
  for (std::size_t w = 0; w < m.size(); ++w)
    if (m[w]) out.push_back(static_cast<int>(w));
  return out;
}

/// Window override from the environment (HECAT_WINDOW), if set and positive.
inline std::optional<int> window_override() {
  if (const char* w = std::getenv("HECAT_WINDOW")) {
    try {
      int x = std::stoi(w);
      if (x > 0) return x;
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

/// Graded rank of Hom(B, C) from degreewise dimensions on [lo, lo + width].
/// Dimensions are divided by the Hilbert series of R one degree at a time;
/// the result is complete once the generator count reaches the generic rank
/// of Hom. Throws WindowTooSmall if that does not happen inside the window or
/// the division produces a negative coefficient.
template <class F>
LaurentPoly graded_hom_rank_window(const Bimodule<F>& b, const Bimodule<F>& c, int width) {
  check_same_ring(b, c);
  if (b.rank() == 0 || c.rank() == 0) return {};
  const std::size_t n = b.ring()->num_vars();
  const auto mb = eigen_multiplicities(b), mc = eigen_multiplicities(c);
  long long total = 0;
  for (std::size_t w = 0; w < mb.size(); ++w) total += static_cast<long long>(mb[w] * mc[w]);
  // (1 - v^2)^n
  std::vector<long long> binom(n + 1, 0);
  binom[0] = 1;
  for (std::size_t t = 1; t <= n; ++t)
    for (std::size_t k = t; k > 0; --k) binom[k] -= binom[k - 1];
  const int lo = c.min_degree() - b.max_degree();
  std::vector<long long> dims;
  LaurentPoly out;
  long long found = 0;
  for (int i = 0; i <= width && found < total; ++i) {
    dims.push_back(static_cast<long long>(hom_dimension(b, c, lo + i)));
    long long p = 0;
    for (std::size_t t = 0; t <= n && 2 * static_cast<int>(t) <= i; ++t)
      p += binom[t] * dims[static_cast<std::size_t>(i - 2 * static_cast<int>(t))];
    if (p < 0) throw WindowTooSmall("negative coefficient in the Hom rank at degree " + std::to_string(lo + i));
    out.add(lo + i, p);
    found += p;
  }
  if (found != total)
    throw WindowTooSmall("Hom rank did not reach its generic rank " + std::to_string(total) +
                         " inside a window of width " + std::to_string(width));
  return out;
}

inline int initial_window(int spread_sum, std::size_t nvars) {
  if (auto w = window_override()) return *w;
  return std::max(2 * spread_sum, 2) + 2 * static_cast<int>(nvars) + 2;
}

/// Graded rank of Hom(B, C) as a free left R-module, with v^d counting a
/// generator of degree d. The window doubles on WindowTooSmall.
template <class F>
LaurentPoly graded_hom_rank(const Bimodule<F>& b, const Bimodule<F>& c, int max_doublings = 3) {
  int width = initial_window(b.spread() + c.spread(), b.ring()->num_vars());
  for (int attempt = 0;; ++attempt) {
    try {
      return graded_hom_rank_window(b, c, width);
    } catch (const WindowTooSmall&) {
      if (attempt >= max_doublings) throw;
      width *= 2;
    }
  }
}

/// Graded rank predicted by the Hecke algebra.
template <class F>
LaurentPoly hom_rank_pairing(const Bimodule<F>& b, const Bimodule<F>& c) {
  check_same_ring(b, c);
  return b.ring()->hecke().pairing(b.character(), c.character());
}

// ---------------------------------------------------------------------------
// Finite-dimensional algebras given by structure constants, and idempotent
// splitting.

namespace detail {

template <class F>
using Vec = std::vector<F>;

template <class F>
Vec<F> axpy(Vec<F> y, const F& a, const Vec<F>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  return y;
}

template <class F>
bool is_zero_vec(const Vec<F>& x) {
  return std::all_of(x.begin(), x.end(), [](const F& c) { return is_zero(c); });
}

/// Associative unital algebra with basis e_0..e_{n-1}.
template <class F>
class Algebra {
 public:
  Algebra(std::vector<std::vector<Vec<F>>> c, Vec<F> one) : c_(std::move(c)), one_(std::move(one)) {}

  std::size_t dim() const { return one_.size(); }
  const Vec<F>& one() const { return one_; }
  Vec<F> basis(std::size_t a) const {
    Vec<F> x(dim(), F(0));
    x[a] = F(1);
    return x;
  }

  Vec<F> mul(const Vec<F>& x, const Vec<F>& y) const {
    Vec<F> z(dim(), F(0));
    for (std::size_t a = 0; a < dim(); ++a) {
      if (is_zero(x[a])) continue;
      for (std::size_t b = 0; b < dim(); ++b) {
        if (is_zero(y[b])) continue;
        const F xy = x[a] * y[b];
        const Vec<F>& cab = c_[a][b];
        for (std::size_t k = 0; k < dim(); ++k)
          if (!is_zero(cab[k])) z[k] += xy * cab[k];
      }
    }
    return z;
  }

  /// Jacobson radical via the trace form of the left regular representation
  /// (valid in characteristic zero).
  std::vector<Vec<F>> radical() const {
    const std::size_t n = dim();
    std::vector<Matrix<F>> left(n);
    for (std::size_t a = 0; a < n; ++a) {
      Matrix<F> m(n, n);
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t k = 0; k < n; ++k) m(k, b) = c_[a][b][k];
      left[a] = std::move(m);
    }
    Matrix<F> gram(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        F t(0);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t k = 0; k < n; ++k) t += left[a](i, k) * left[b](k, i);
        gram(a, b) = gram(b, a) = t;
      }
    Matrix<F> ker = nullspace(gram);
    std::vector<Vec<F>> out;
    for (std::size_t j = 0; j < ker.cols(); ++j) out.push_back(ker.column(j));
    return out;
  }

 private:
  std::vector<std::vector<Vec<F>>> c_;
  Vec<F> one_;
};

template <class F>
std::vector<F> rational_root_candidates(const std::vector<F>& poly) {
  std::vector<F> out;
  if constexpr (std::is_same_v<F, Rational>) {
    // clear denominators, then p | a_0 and q | a_n
    mpz_class l = 1;
    for (const auto& c : poly) l = lcm(l, mpz_class(c.get_den()));
    std::vector<mpz_class> z;
    for (const auto& c : poly) {
      const mpq_class scaled = c * l;
      z.push_back(scaled.get_num());
    }
    std::size_t low = 0;
    while (low < z.size() && z[low] == 0) ++low;
    if (low > 0) out.push_back(F(0));
    if (low + 1 >= z.size()) return out;
    auto divisors = [](mpz_class x) -> std::optional<std::vector<mpz_class>> {
      x = abs(x);
      if (x > 1000000) return std::nullopt;
      std::vector<mpz_class> d;
      for (long i = 1; i <= x.get_si(); ++i)
        if (x % i == 0) d.push_back(i);
      return d;
    };
    auto ps = divisors(z[low]), qs = divisors(z.back());
    if (ps && qs)
      for (const auto& p : *ps)
        for (const auto& q : *qs) {
          out.push_back(F(mpq_class(p, q)));
          out.push_back(F(mpq_class(-p, q)));
        }
  } else {
    out.push_back(F(0));
    for (long p = 1; p <= 12; ++p)
      for (long q = 1; q <= 4; ++q) {
        out.push_back(F(p) / F(q));
        out.push_back(F(-p) / F(q));
      }
  }
  return out;
}

template <class F>
F eval_poly(const std::vector<F>& poly, const F& x) {
  F r(0);
  for (std::size_t i = poly.size(); i-- > 0;) r = r * x + poly[i];
  return r;
}

/// Splits the unit of an algebra into primitive orthogonal idempotents.
template <class F>
class IdempotentSplitter {
 public:
  explicit IdempotentSplitter(const Algebra<F>& alg, std::uint64_t seed = 7, int lift_bound = 64)
      : alg_(alg), rng_(seed), lift_bound_(lift_bound), rad_(alg.dim()) {
    for (const auto& r : alg.radical()) rad_.add(dense_to_sparse(r));
  }

  std::vector<Vec<F>> run() {
    std::vector<Vec<F>> out;
    if (alg_.dim() == 0) return out;
    split(alg_.one(), out);
    return out;
  }

 private:
  Vec<F> red(const Vec<F>& x) const { return sparse_to_dense(rad_.reduce(dense_to_sparse(x)), alg_.dim()); }
  Vec<F> corner(const Vec<F>& e, const Vec<F>& x) const { return alg_.mul(e, alg_.mul(x, e)); }

  /// Basis (reduced representatives) of the image of eAe in A/rad.
  std::vector<Vec<F>> corner_quotient_basis(const Vec<F>& e) const {
    SparseEchelon<F> ech(alg_.dim());
    std::vector<Vec<F>> out;
    for (std::size_t a = 0; a < alg_.dim(); ++a) {
      Vec<F> x = red(corner(e, alg_.basis(a)));
      if (ech.add(dense_to_sparse(x))) out.push_back(x);
    }
    return out;
  }

  /// Minimal polynomial (low-to-high coefficients, monic) of x in eAe/rad.
  std::vector<F> min_poly(const Vec<F>& e, const Vec<F>& x) const {
    std::vector<Vec<F>> powers{red(e)};
    for (;;) {
      Vec<F> next = red(alg_.mul(x, powers.back()));
      Matrix<F> a = Matrix<F>::from_columns(alg_.dim(), powers);
      if (auto c = solve(a, next)) {
        std::vector<F> poly;
        for (const auto& ci : *c) poly.push_back(-ci);
        poly.push_back(F(1));
        return poly;
      }
      powers.push_back(next);
    }
  }

  /// A zero divisor y = x - lambda e in eAe/rad, nonzero there.
  std::optional<Vec<F>> find_zero_divisor(const Vec<F>& e, const std::vector<Vec<F>>& qbasis) {
    std::vector<Vec<F>> candidates = qbasis;
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < 40; ++t) {
      Vec<F> x(alg_.dim(), F(0));
      for (const auto& q : qbasis) x = axpy(x, F(coef(rng_)), q);
      candidates.push_back(x);
    }
    for (const auto& x : candidates) {
      std::vector<F> mp = min_poly(e, x);
      if (mp.size() <= 2) continue;  // x is a scalar multiple of e in the quotient
      for (const F& lambda : rational_root_candidates(mp))
        if (is_zero(eval_poly(mp, lambda))) return red(axpy(x, F(-lambda), e));
    }
    return std::nullopt;
  }

  /// Idempotent generator (mod rad) of the left ideal (eAe) y.
  Vec<F> ideal_idempotent(const Vec<F>& e, const Vec<F>& y, const std::vector<Vec<F>>& qbasis) const {
    SparseEchelon<F> ech(alg_.dim());
    std::vector<Vec<F>> l;
    for (const auto& q : qbasis) {
      Vec<F> z = red(alg_.mul(q, y));
      if (ech.add(dense_to_sparse(z))) l.push_back(z);
    }
    // u = sum c_k l_k with l_i u = l_i for all i
    const std::size_t n = alg_.dim(), m = l.size();
    Matrix<F> a(n * m, m);
    std::vector<F> rhs(n * m, F(0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k) {
        Vec<F> p = red(alg_.mul(l[i], l[k]));
        for (std::size_t r = 0; r < n; ++r) a(i * n + r, k) = p[r];
      }
      for (std::size_t r = 0; r < n; ++r) rhs[i * n + r] = l[i][r];
    }
    auto c = solve(a, rhs);
    if (!c) throw NonSemiperfect("left ideal has no idempotent generator; quotient is not semisimple");
    Vec<F> u(n, F(0));
    for (std::size_t k = 0; k < m; ++k) u = axpy(u, (*c)[k], l[k]);
    (void)e;
    return u;
  }

  /// Lifts an idempotent of eAe/rad to an idempotent of eAe.
  Vec<F> lift(const Vec<F>& e, Vec<F> f) const {
    f = corner(e, f);
    for (int it = 0; it < lift_bound_; ++it) {
      Vec<F> f2 = alg_.mul(f, f);
      if (f2 == f) return f;
      Vec<F> f3 = alg_.mul(f2, f);
      Vec<F> next(alg_.dim(), F(0));
      next = axpy(next, F(3), f2);
      next = axpy(next, F(-2), f3);
      f = std::move(next);
    }
    throw NonSemiperfect("idempotent lifting did not converge within the nilpotency bound");
  }

  void split(const Vec<F>& e, std::vector<Vec<F>>& out) {
    std::vector<Vec<F>> qbasis = corner_quotient_basis(e);
    if (qbasis.size() <= 1) {
      out.push_back(e);
      return;
    }
    auto y = find_zero_divisor(e, qbasis);
    if (!y) throw NonSemiperfect("no rational zero divisor found in a non-simple corner algebra");
    Vec<F> u = ideal_idempotent(e, *y, qbasis);
    Vec<F> e1 = lift(e, u);
    Vec<F> e2 = axpy(e, F(-1), e1);
    if (is_zero_vec(e1) || is_zero_vec(e2)) throw NonSemiperfect("idempotent splitting produced a trivial piece");
    split(e1, out);
    split(e2, out);
  }

  const Algebra<F>& alg_;
  std::mt19937_64 rng_;
  int lift_bound_;
  SparseEchelon<F> rad_;
};

}  // namespace detail

/// Indecomposable piece of a bimodule together with its inclusion and
/// projection. The piece is isomorphic to B_element<shift>.
template <class F>
struct SummandPiece {
  Bimodule<F> image;
  PolyMatrix<F> inclusion;   // image -> B
  PolyMatrix<F> projection;  // B -> image
  PolyMatrix<F> idempotent;  // inclusion * projection
  int element = 0;
  int shift = 0;
};

/// One isomorphism class of summands: B_element<shift> with multiplicity.
template <class F>
struct DecompositionEntry {
  Bimodule<F> summand;  // a model of B_element (unshifted)
  int element = 0;
  int multiplicity = 0;
  int shift = 0;
};

/// Identifies an indecomposable bimodule as B_x<k>: x is the Bruhat-maximal
/// element of the support, and k comes from the lowest basis degree -l(x)-k.
template <class F>
std::pair<int, int> identify_indecomposable(const Bimodule<F>& d) {
  const CoxeterGroup& g = d.ring()->group();
  std::vector<int> sup = support(d);
  if (sup.empty()) throw InvalidObject("empty support");
  int top = sup.front();
  for (int w : sup)
    if (g.length(w) > g.length(top)) top = w;
  for (int w : sup)
    if (!g.bruhat_leq(w, top)) throw InvalidObject("support of an indecomposable has no Bruhat maximum");
  return {top, -d.min_degree() - g.length(top)};
}

namespace detail {

/// Solves iota * P = e for P with homogeneous entries (degree-0 map B -> D).
template <class F>
PolyMatrix<F> solve_projection(const PolyMatrix<F>& iota, const PolyMatrix<F>& e, const std::vector<int>& src_deg,
                               const std::vector<int>& dst_deg, std::size_t nvars) {
  const std::size_t n = iota.rows(), m = iota.cols();
  PolyMatrix<F> p(m, e.cols());
  for (std::size_t i = 0; i < e.cols(); ++i) {
    struct Unknown {
      std::size_t k;
      Monomial mono;
    };
    std::vector<Unknown> unk;
    for (std::size_t k = 0; k < m; ++k) {
      const int deg = src_deg[i] - dst_deg[k];
      if (deg < 0 || deg % 2) continue;
      for (Monomial mono : monomials_of_degree(nvars, deg / 2)) unk.push_back({k, mono});
    }
    std::map<std::pair<std::size_t, Monomial>, std::size_t> eq;
    auto row_of = [&](std::size_t a, Monomial mono) {
      auto key = std::make_pair(a, mono);
      auto it = eq.find(key);
      if (it == eq.end()) it = eq.emplace(key, eq.size()).first;
      return it->second;
    };
    std::vector<std::tuple<std::size_t, std::size_t, F>> entries;
    for (std::size_t u = 0; u < unk.size(); ++u)
      for (std::size_t a = 0; a < n; ++a) {
        const auto& q = iota(a, unk[u].k);
        for (const auto& [mono, x] : q.terms()) entries.emplace_back(row_of(a, mono + unk[u].mono), u, x);
      }
    std::vector<std::pair<std::size_t, F>> rhs_entries;
    for (std::size_t a = 0; a < n; ++a)
      for (const auto& [mono, x] : e(a, i).terms()) rhs_entries.emplace_back(row_of(a, mono), x);
    Matrix<F> a(eq.size(), unk.size());
    std::vector<F> rhs(eq.size(), F(0));
    for (const auto& [r, c, x] : entries) a(r, c) += x;
    for (const auto& [r, x] : rhs_entries) rhs[r] += x;
    auto sol = solve(a, rhs);
    if (!sol) throw InvalidObject("idempotent image is not split by the chosen columns");
    for (std::size_t u = 0; u < unk.size(); ++u)
      if (!is_zero((*sol)[u])) p(unk[u].k, i) += Polynomial<F>::monomial(unk[u].mono, (*sol)[u]);
  }
  return p;
}

}  // namespace detail

/// Realizes the image of a degree-0 idempotent endomorphism as a bimodule.
template <class F>
SummandPiece<F> idempotent_image(const Bimodule<F>& b, const PolyMatrix<F>& e) {
  // Graded Nakayama: columns of e whose constant parts are independent give a
  // left basis of the image.
  Matrix<F> c = e.constant_part();
  SparseEchelon<F> ech(b.rank());
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < b.rank(); ++i)
    if (ech.add(dense_to_sparse(c.column(i)))) cols.push_back(i);
  SummandPiece<F> piece;
  piece.inclusion = e.columns(cols);
  std::vector<int> deg;
  std::vector<std::string> labels;
  for (std::size_t i : cols) {
    deg.push_back(b.degree(i));
    labels.push_back(b.labels()[i]);
  }
  piece.projection = detail::solve_projection(piece.inclusion, e, b.degrees(), deg, b.ring()->num_vars());
  std::vector<PolyMatrix<F>> right;
  for (std::size_t j = 0; j < b.ring()->num_vars(); ++j)
    right.push_back(piece.projection * b.right_action(j) * piece.inclusion);
  piece.idempotent = e;
  piece.image = Bimodule<F>(b.ring(), deg, std::move(right), std::move(labels), HeckeElement(b.ring()->group_ptr()),
                            0);
  auto [x, k] = identify_indecomposable(piece.image);
  piece.element = x;
  piece.shift = k;
  const HeckeAlgebra& h = b.ring()->hecke();
  piece.image = Bimodule<F>(b.ring(), piece.image.degrees(), piece.image.right_actions(), piece.image.labels(),
                            h.kl(x).scaled(LaurentPoly::monomial(k)), k);
  return piece;
}

/// Splits B into indecomposable pieces with explicit inclusions and
/// projections, via primitive idempotents of the degree-0 endomorphism algebra.
template <class F>
std::vector<SummandPiece<F>> split_summands(const Bimodule<F>& b) {
  if (b.rank() == 0) return {};
  HomSpace<F> end = hom_space(b, b, 0);
  const std::size_t r = end.dim();
  std::vector<std::vector<detail::Vec<F>>> c(r, std::vector<detail::Vec<F>>(r));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t bb = 0; bb < r; ++bb) c[a][bb] = end.coordinates(end.maps[a] * end.maps[bb]);
  detail::Algebra<F> alg(std::move(c), end.coordinates(PolyMatrix<F>::identity(b.rank())));
  detail::IdempotentSplitter<F> splitter(alg);
  std::vector<SummandPiece<F>> out;
  for (const auto& idem : splitter.run()) out.push_back(idempotent_image(b, end.combine(idem)));
  std::sort(out.begin(), out.end(), [&](const SummandPiece<F>& x, const SummandPiece<F>& y) {
    const CoxeterGroup& g = b.ring()->group();
    return std::make_tuple(-g.length(x.element), x.element, x.shift) <
           std::make_tuple(-g.length(y.element), y.element, y.shift);
  });
  return out;
}

/// Isomorphism classes of indecomposable summands with multiplicities, longest
/// elements first.
template <class F>
std::vector<DecompositionEntry<F>> decompose(const Bimodule<F>& b) {
  std::vector<DecompositionEntry<F>> out;
  for (const auto& p : split_summands(b)) {
    if (!out.empty() && out.back().element == p.element && out.back().shift == p.shift) {
      ++out.back().multiplicity;
      continue;
    }
    out.push_back({p.image.shifted(-p.shift), p.element, 1, p.shift});
  }
  return out;
}

}  // namespace hecat
