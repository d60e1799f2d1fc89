#pragma once

// Bigraded rational complexes: a graded degree g (preserved by d), a
// cohomological degree c (raised by d), and weight g - c.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hecat/errors.hpp"
#include "hecat/laurent.hpp"
#include "hecat/linalg.hpp"
#include "hecat/rational.hpp"

namespace hecat {

using QMatrix = Matrix<Rational>;

struct Bidegree {
  int g = 0;
  int c = 0;
  int weight() const { return g - c; }
  Bidegree next() const { return {g, c + 1}; }
  Bidegree prev() const { return {g, c - 1}; }
  auto operator<=>(const Bidegree&) const = default;
};

class Bigraded {
 public:
  struct Piece {
    std::size_t dim = 0;
    std::vector<std::string> labels;
  };

  Bigraded() = default;

  /// Unit-like object: a single basis vector at (g, c).
  static Bigraded line(int g, int c, std::string label = "e") {
    Bigraded v;
    v.set_entry({g, c}, 1, {std::move(label)});
    return v;
  }
  static Bigraded unit() { return line(0, 0, "1"); }

  void set_entry(Bidegree b, std::size_t dim, std::vector<std::string> labels = {}) {
    if (dim == 0) {
      entries_.erase(b);
      d_.erase(b);
      d_.erase(b.prev());
      return;
    }
    if (labels.empty())
      for (std::size_t i = 0; i < dim; ++i) labels.push_back("b" + std::to_string(i));
    if (labels.size() != dim) throw InvalidObject("label count does not match dimension");
    entries_[b] = Piece{dim, std::move(labels)};
  }

  /// Sets d: (g,c) -> (g,c+1). The matrix has shape dim(g,c+1) x dim(g,c).
  void set_differential(Bidegree from, QMatrix m) {
    if (m.rows() != dim(from.next()) || m.cols() != dim(from))
      throw InvalidObject("differential has the wrong shape");
    if (m.is_zero() || m.empty()) {
      d_.erase(from);
      return;
    }
    d_[from] = std::move(m);
  }

  std::size_t dim(Bidegree b) const {
    auto it = entries_.find(b);
    return it == entries_.end() ? 0 : it->second.dim;
  }
  std::vector<std::string> labels(Bidegree b) const {
    auto it = entries_.find(b);
    return it == entries_.end() ? std::vector<std::string>{} : it->second.labels;
  }
  QMatrix differential(Bidegree from) const {
    auto it = d_.find(from);
    if (it != d_.end()) return it->second;
    return QMatrix(dim(from.next()), dim(from));
  }
  const std::map<Bidegree, Piece>& entries() const { return entries_; }
  const std::map<Bidegree, QMatrix>& differentials() const { return d_; }

  bool is_zero() const { return entries_.empty(); }
  std::size_t total_dim() const {
    std::size_t n = 0;
    for (const auto& [b, p] : entries_) n += p.dim;
    return n;
  }

  /// Checks d o d = 0 and shapes; throws InvalidObject otherwise.
  void validate() const {
    for (const auto& [b, m] : d_) {
      if (m.rows() != dim(b.next()) || m.cols() != dim(b)) throw InvalidObject("differential shape");
      auto it = d_.find(b.next());
      if (it != d_.end() && !(it->second * m).is_zero()) throw InvalidObject("d o d != 0 at (" +
                                                                             std::to_string(b.g) + "," +
                                                                             std::to_string(b.c) + ")");
    }
  }

  /// Graded degrees carrying a nonzero entry.
  std::vector<int> graded_degrees() const {
    std::vector<int> gs;
    for (const auto& [b, p] : entries_)
      if (gs.empty() || gs.back() != b.g) gs.push_back(b.g);
    return gs;
  }

 private:
  std::map<Bidegree, Piece> entries_;
  std::map<Bidegree, QMatrix> d_;
};

/// A degree-(0,0) map between bigraded objects: one matrix per bidegree of the source.
struct BigradedMap {
  std::map<Bidegree, QMatrix> blocks;

  QMatrix at(const Bigraded& src, const Bigraded& dst, Bidegree b) const {
    auto it = blocks.find(b);
    if (it != blocks.end()) return it->second;
    return QMatrix(dst.dim(b), src.dim(b));
  }
};

inline bool operator==(const Bigraded& a, const Bigraded& b) {
  if (a.entries().size() != b.entries().size()) return false;
  for (const auto& [k, p] : a.entries())
    if (b.dim(k) != p.dim) return false;
  for (const auto& [k, p] : a.entries())
    if (!(a.differential(k) == b.differential(k))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Small linear-algebra helpers shared by the complex modules.

/// Indices of a maximal set of linearly independent columns (leftmost first).
template <class F>
std::vector<std::size_t> independent_columns(const Matrix<F>& m) {
  Matrix<F> w = m;
  return rref_in_place(w);
}

template <class F>
Matrix<F> select_columns(const Matrix<F>& m, const std::vector<std::size_t>& cols) {
  Matrix<F> r(m.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) r(i, j) = m(i, cols[j]);
  return r;
}

template <class F>
Matrix<F> hcat(const Matrix<F>& a, const Matrix<F>& b) {
  std::size_t rows = std::max(a.rows(), b.rows());
  Matrix<F> r(rows, a.cols() + b.cols());
  r.place(0, 0, a);
  r.place(0, a.cols(), b);
  return r;
}

/// Left inverse of a matrix with independent columns (exact, via the normal equations).
inline QMatrix left_inverse(const QMatrix& k) {
  if (k.cols() == 0) return QMatrix(0, k.rows());
  auto inv = inverse(QMatrix(k.transpose() * k));
  if (!inv) throw InvalidObject("left_inverse: columns are dependent");
  return *inv * k.transpose();
}

/// Cocycle representatives of H = ker(d_out)/im(d_in) on an n-dimensional
/// space, plus a coordinate matrix valid on cocycles.
struct CohomologyBasis {
  QMatrix reps;    // n x h
  QMatrix coords;  // h x n
  std::size_t dim() const { return reps.cols(); }
};

inline CohomologyBasis cohomology_basis(const QMatrix& d_in, const QMatrix& d_out, std::size_t n) {
  QMatrix bnd = d_in.cols() ? select_columns(d_in, independent_columns(d_in)) : QMatrix(n, 0);
  QMatrix cyc = d_out.rows() ? nullspace(d_out) : QMatrix::identity(n);
  QMatrix all = hcat(bnd, cyc);
  auto piv = independent_columns(all);
  std::vector<std::size_t> extra;
  for (auto p : piv)
    if (p >= bnd.cols()) extra.push_back(p);
  CohomologyBasis cb;
  cb.reps = select_columns(all, extra);
  QMatrix l = left_inverse(hcat(bnd, cb.reps));
  cb.coords = l.block(bnd.cols(), 0, extra.size(), n);
  return cb;
}

// ---------------------------------------------------------------------------
// Operations.

/// result(g, c) = V(g, c + n); the differential picks up (-1)^n.
inline Bigraded shift_coh(const Bigraded& v, int n) {
  Bigraded r;
  for (const auto& [b, p] : v.entries()) r.set_entry({b.g, b.c - n}, p.dim, p.labels);
  const Rational sign = (n % 2 == 0) ? 1 : -1;
  for (const auto& [b, m] : v.differentials()) r.set_differential({b.g, b.c - n}, m.scaled(sign));
  return r;
}

/// result(g, c) = V(g + k, c).
inline Bigraded shift_gr(const Bigraded& v, int k) {
  Bigraded r;
  for (const auto& [b, p] : v.entries()) r.set_entry({b.g - k, b.c}, p.dim, p.labels);
  for (const auto& [b, m] : v.differentials()) r.set_differential({b.g - k, b.c}, m);
  return r;
}

inline Bigraded direct_sum(const Bigraded& a, const Bigraded& b) {
  Bigraded r;
  std::map<Bidegree, std::size_t> na;
  for (const auto& [k, p] : a.entries()) na[k] = p.dim;
  std::map<Bidegree, std::size_t> all = na;
  for (const auto& [k, p] : b.entries()) all[k] += p.dim;
  for (const auto& [k, n] : all) {
    auto la = a.labels(k), lb = b.labels(k);
    la.insert(la.end(), lb.begin(), lb.end());
    r.set_entry(k, n, la);
  }
  for (const auto& [k, n] : all) {
    if (!all.count(k.next())) continue;
    QMatrix m(all.at(k.next()), n);
    m.place(0, 0, a.differential(k));
    m.place(a.dim(k.next()), a.dim(k), b.differential(k));
    r.set_differential(k, m);
  }
  return r;
}

namespace detail {
// Layout of a bidegree of a product-like construction: ordered list of
// contributing (first, second) bidegree pairs with their offsets.
struct BlockLayout {
  std::vector<std::tuple<Bidegree, Bidegree, std::size_t>> blocks;
  std::size_t dim = 0;
  std::optional<std::size_t> offset(Bidegree x, Bidegree y) const {
    for (const auto& [a, b, o] : blocks)
      if (a == x && b == y) return o;
    return std::nullopt;
  }
};
}  // namespace detail

/// Day-convolution tensor product with the Koszul sign on cohomological degree.
inline Bigraded tensor(const Bigraded& v, const Bigraded& w) {
  std::map<Bidegree, detail::BlockLayout> layout;
  for (const auto& [a, pa] : v.entries())
    for (const auto& [b, pb] : w.entries()) {
      auto& l = layout[{a.g + b.g, a.c + b.c}];
      l.blocks.emplace_back(a, b, l.dim);
      l.dim += pa.dim * pb.dim;
    }
  Bigraded r;
  for (const auto& [k, l] : layout) {
    std::vector<std::string> labels;
    for (const auto& [a, b, o] : l.blocks) {
      auto la = v.labels(a), lb = w.labels(b);
      for (const auto& x : la)
        for (const auto& y : lb) labels.push_back(x + "|" + y);
    }
    r.set_entry(k, l.dim, labels);
  }
  for (const auto& [k, l] : layout) {
    auto it = layout.find(k.next());
    if (it == layout.end()) continue;
    const auto& lt = it->second;
    QMatrix m(lt.dim, l.dim);
    for (const auto& [a, b, o] : l.blocks) {
      const std::size_t nb = w.dim(b);
      // d(x (x) y) = dx (x) y + (-1)^{c(x)} x (x) dy
      if (auto ot = lt.offset(a.next(), b)) {
        QMatrix da = v.differential(a);
        for (std::size_t i = 0; i < da.rows(); ++i)
          for (std::size_t j = 0; j < da.cols(); ++j) {
            if (is_zero(da(i, j))) continue;
            for (std::size_t y = 0; y < nb; ++y) m(*ot + i * nb + y, o + j * nb + y) += da(i, j);
          }
      }
      if (auto ot = lt.offset(a, b.next())) {
        QMatrix db = w.differential(b);
        const Rational sign = (a.c % 2 == 0) ? 1 : -1;
        const std::size_t nb2 = w.dim(b.next());
        for (std::size_t x = 0; x < v.dim(a); ++x)
          for (std::size_t i = 0; i < db.rows(); ++i)
            for (std::size_t j = 0; j < db.cols(); ++j)
              if (!is_zero(db(i, j))) m(*ot + x * nb2 + i, o + x * nb + j) += sign * db(i, j);
      }
    }
    r.set_differential(k, m);
  }
  return r;
}

/// Internal Hom. The (g, c) component consists of linear maps from V(g1, c1)
/// to W(g1 + g, c1 + c); the differential is Df = d_W f - (-1)^c f d_V.
/// A basis map E_ij (target i, source j) sits at offset + i * dim(source) + j.
inline Bigraded hom_complex(const Bigraded& v, const Bigraded& w) {
  std::map<Bidegree, detail::BlockLayout> layout;  // blocks: (source, target)
  for (const auto& [a, pa] : v.entries())
    for (const auto& [b, pb] : w.entries()) {
      auto& l = layout[{b.g - a.g, b.c - a.c}];
      l.blocks.emplace_back(a, b, l.dim);
      l.dim += pa.dim * pb.dim;
    }
  Bigraded r;
  for (const auto& [k, l] : layout) {
    std::vector<std::string> labels;
    for (const auto& [a, b, o] : l.blocks) {
      auto la = v.labels(a), lb = w.labels(b);
      for (const auto& y : lb)
        for (const auto& x : la) labels.push_back("Hom(" + x + "," + y + ")");
    }
    r.set_entry(k, l.dim, labels);
  }
  for (const auto& [k, l] : layout) {
    auto it = layout.find(k.next());
    if (it == layout.end()) continue;
    const auto& lt = it->second;
    QMatrix m(lt.dim, l.dim);
    const Rational sign = (k.c % 2 == 0) ? -1 : 1;  // -(-1)^c
    for (const auto& [a, b, o] : l.blocks) {
      const std::size_t na = v.dim(a), nb = w.dim(b);
      // d_W o f : V(a) -> W(b + 1)
      if (auto ot = lt.offset(a, b.next())) {
        QMatrix dw = w.differential(b);
        for (std::size_t i2 = 0; i2 < dw.rows(); ++i2)
          for (std::size_t i = 0; i < nb; ++i) {
            if (is_zero(dw(i2, i))) continue;
            for (std::size_t j = 0; j < na; ++j) m(*ot + i2 * na + j, o + i * na + j) += dw(i2, i);
          }
      }
      // f o d_V : V(a - 1) -> W(b)
      if (auto ot = lt.offset(a.prev(), b)) {
        QMatrix dv = v.differential(a.prev());
        const std::size_t na2 = v.dim(a.prev());
        for (std::size_t i = 0; i < nb; ++i)
          for (std::size_t j = 0; j < na; ++j)
            for (std::size_t j2 = 0; j2 < na2; ++j2)
              if (!is_zero(dv(j, j2))) m(*ot + i * na2 + j2, o + i * na + j) += sign * dv(j, j2);
      }
    }
    r.set_differential(k, m);
  }
  return r;
}

/// Cohomology dimensions per bidegree (zero entries omitted).
inline std::map<Bidegree, std::size_t> cohomology_dims(const Bigraded& v) {
  std::map<Bidegree, std::size_t> h;
  for (const auto& [b, p] : v.entries()) {
    std::size_t r_out = rank(v.differential(b));
    std::size_t r_in = rank(v.differential(b.prev()));
    std::size_t d = p.dim - r_out - r_in;
    if (d) h[b] = d;
  }
  return h;
}

/// Two complexes of graded vector spaces are homotopy equivalent iff their
/// cohomology agrees bidegree by bidegree.
inline bool quasi_isomorphic(const Bigraded& a, const Bigraded& b) { return cohomology_dims(a) == cohomology_dims(b); }

/// Euler characteristic sum (-1)^c dim V(g,c) v^g.
inline LaurentPoly euler_characteristic(const Bigraded& v) {
  LaurentPoly p;
  for (const auto& [b, piece] : v.entries())
    p.add(b.g, (b.c % 2 == 0 ? 1 : -1) * static_cast<long long>(piece.dim));
  return p;
}

/// Restriction to the coordinate subcomplex selected by `keep`.
template <class Pred>
Bigraded restrict_entries(const Bigraded& v, Pred keep) {
  Bigraded r;
  for (const auto& [b, p] : v.entries())
    if (keep(b)) r.set_entry(b, p.dim, p.labels);
  for (const auto& [b, m] : v.differentials())
    if (keep(b) && keep(b.next())) r.set_differential(b, m);
  return r;
}

/// Weight truncation for the transversal structure: `low` keeps c >= g - n
/// (weight <= n, a subcomplex); `high` is the quotient (weight >= n + 1).
inline std::pair<Bigraded, Bigraded> weight_truncate(const Bigraded& v, int n) {
  return {restrict_entries(v, [n](Bidegree b) { return b.weight() <= n; }),
          restrict_entries(v, [n](Bidegree b) { return b.weight() > n; })};
}

/// Graded piece g as an object of its own.
inline Bigraded graded_piece(const Bigraded& v, int g) {
  return restrict_entries(v, [g](Bidegree b) { return b.g == g; });
}

/// Standard truncation per graded piece: (tau_{<= n} V, V / tau_{<= n} V).
/// The quotient is modelled in degree n by the image of d^n.
inline std::pair<Bigraded, Bigraded> t_truncate(const Bigraded& v, int n) {
  Bigraded lo, hi;
  for (const auto& [b, p] : v.entries()) {
    if (b.c < n) lo.set_entry(b, p.dim, p.labels);
    if (b.c > n) hi.set_entry(b, p.dim, p.labels);
  }
  std::map<int, QMatrix> ker, img;
  for (const auto& [b, p] : v.entries()) {
    if (b.c != n) continue;
    QMatrix d = v.differential(b);
    QMatrix k = nullspace(d);
    ker[b.g] = k;
    lo.set_entry(b, k.cols(), {});
    QMatrix im = select_columns(d, independent_columns(d));
    img[b.g] = im;
    hi.set_entry(b, im.cols(), {});
  }
  for (const auto& [b, m] : v.differentials()) {
    if (b.c < n - 1) lo.set_differential(b, m);
    if (b.c == n - 1 && ker.count(b.g) && ker[b.g].cols()) {
      lo.set_differential(b, left_inverse(ker[b.g]) * m);
    }
    if (b.c > n) hi.set_differential(b, m);
    if (b.c == n && img.count(b.g) && img[b.g].cols()) hi.set_differential(b, img[b.g]);
  }
  return {lo, hi};
}

/// Diagonal cohomology of an object in the weight heart.
inline std::vector<std::tuple<int, int, std::size_t>> decompose_pure(const Bigraded& v) {
  std::vector<std::tuple<int, int, std::size_t>> out;
  for (const auto& [b, d] : cohomology_dims(v)) {
    if (b.g != b.c)
      throw NotPure("cohomology at (" + std::to_string(b.g) + "," + std::to_string(b.c) + ") is off the diagonal");
    out.emplace_back(b.g, b.c, d);
  }
  return out;
}

/// Zero-differential object with the given entries.
inline Bigraded from_dims(const std::map<Bidegree, std::size_t>& dims) {
  Bigraded r;
  for (const auto& [b, n] : dims) r.set_entry(b, n);
  return r;
}

/// Moves graded piece g from cohomological degree c to c + g.
inline Bigraded shear_fwd(const Bigraded& v) {
  Bigraded r;
  for (const auto& [b, p] : v.entries()) r.set_entry({b.g, b.c + b.g}, p.dim, p.labels);
  for (const auto& [b, m] : v.differentials()) r.set_differential({b.g, b.c + b.g}, m);
  return r;
}

inline Bigraded shear_bwd(const Bigraded& v) {
  Bigraded r;
  for (const auto& [b, p] : v.entries()) r.set_entry({b.g, b.c - b.g}, p.dim, p.labels);
  for (const auto& [b, m] : v.differentials()) r.set_differential({b.g, b.c - b.g}, m);
  return r;
}

/// Weight range of the cohomology (a homotopy invariant); nullopt for acyclic objects.
inline std::optional<std::pair<int, int>> weight_range(const Bigraded& v) {
  std::optional<std::pair<int, int>> r;
  for (const auto& [b, d] : cohomology_dims(v)) {
    int w = b.weight();
    if (!r) r = {w, w};
    r->first = std::min(r->first, w);
    r->second = std::max(r->second, w);
  }
  return r;
}

inline bool in_weight_le(const Bigraded& v, int n) {
  auto r = weight_range(v);
  return !r || r->second <= n;
}
inline bool in_weight_ge(const Bigraded& v, int n) {
  auto r = weight_range(v);
  return !r || r->first >= n;
}

/// Mapping cone of a chain map f: A -> B; cone^c = A^{c+1} (+) B^c.
inline Bigraded cone(const Bigraded& a, const Bigraded& b, const BigradedMap& f) {
  Bigraded r;
  std::map<Bidegree, bool> keys;
  for (const auto& [k, p] : a.entries()) keys[k.prev()] = true;
  for (const auto& [k, p] : b.entries()) keys[k] = true;
  for (const auto& [k, _] : keys) {
    auto la = a.labels(k.next()), lb = b.labels(k);
    for (auto& x : la) x = "c(" + x + ")";
    la.insert(la.end(), lb.begin(), lb.end());
    r.set_entry(k, a.dim(k.next()) + b.dim(k), la);
  }
  for (const auto& [k, _] : keys) {
    if (!keys.count(k.next())) continue;
    const std::size_t na = a.dim(k.next()), na2 = a.dim(k.next().next());
    QMatrix m(na2 + b.dim(k.next()), na + b.dim(k));
    m.place(0, 0, a.differential(k.next()).scaled(Rational(-1)));
    m.place(na2, 0, f.at(a, b, k.next()));
    m.place(na2, na, b.differential(k));
    r.set_differential(k, m);
  }
  return r;
}

/// Coordinate inclusion of the weight-truncation subcomplex.
inline BigradedMap coordinate_inclusion(const Bigraded& sub, const Bigraded& whole) {
  BigradedMap f;
  for (const auto& [b, p] : sub.entries()) {
    QMatrix m(whole.dim(b), p.dim);
    for (std::size_t i = 0; i < p.dim; ++i) m(i, i) = 1;
    f.blocks[b] = m;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Weight filtrations and the weight complex functor.

/// Increasing filtration F_first ⊂ ... ⊂ F_last = V by subcomplexes; each
/// step gives, per bidegree, a matrix whose columns span the subspace.
struct WeightFiltration {
  int first = 0;
  std::vector<std::map<Bidegree, QMatrix>> steps;
  int last() const { return first + static_cast<int>(steps.size()) - 1; }
};

/// The canonical filtration by weight truncations.
inline WeightFiltration canonical_filtration(const Bigraded& v) {
  WeightFiltration f;
  if (v.is_zero()) return f;
  int lo = v.entries().begin()->first.weight(), hi = lo;
  for (const auto& [b, p] : v.entries()) {
    lo = std::min(lo, b.weight());
    hi = std::max(hi, b.weight());
  }
  f.first = lo;
  for (int i = lo; i <= hi; ++i) {
    std::map<Bidegree, QMatrix> step;
    for (const auto& [b, p] : v.entries()) {
      if (b.weight() <= i) step[b] = QMatrix::identity(p.dim);
    }
    f.steps.push_back(step);
  }
  return f;
}

namespace detail {
inline QMatrix span_at(const std::map<Bidegree, QMatrix>& step, Bidegree b, std::size_t n) {
  auto it = step.find(b);
  if (it == step.end()) return QMatrix(n, 0);
  return select_columns(it->second, independent_columns(it->second));
}
}  // namespace detail

/// Tensor filtration F_n(V (x) W) = sum_{i+j=n} F_i V (x) F_j W.
inline WeightFiltration tensor_filtration(const Bigraded& v, const WeightFiltration& fv, const Bigraded& w,
                                          const WeightFiltration& fw) {
  Bigraded t = tensor(v, w);
  // Reconstruct the tensor layout to place Kronecker products.
  std::map<Bidegree, detail::BlockLayout> layout;
  for (const auto& [a, pa] : v.entries())
    for (const auto& [b, pb] : w.entries()) {
      auto& l = layout[{a.g + b.g, a.c + b.c}];
      l.blocks.emplace_back(a, b, l.dim);
      l.dim += pa.dim * pb.dim;
    }
  WeightFiltration f;
  f.first = fv.first + fw.first;
  const int last = fv.last() + fw.last();
  for (int n = f.first; n <= last; ++n) {
    std::map<Bidegree, QMatrix> step;
    for (const auto& [k, l] : layout) {
      std::vector<std::vector<Rational>> cols;
      for (int i = fv.first; i <= fv.last(); ++i) {
        int j = n - i;
        if (j < fw.first) continue;
        j = std::min(j, fw.last());
        for (const auto& [a, b, o] : l.blocks) {
          QMatrix sa = detail::span_at(fv.steps[i - fv.first], a, v.dim(a));
          QMatrix sb = detail::span_at(fw.steps[j - fw.first], b, w.dim(b));
          for (std::size_t x = 0; x < sa.cols(); ++x)
            for (std::size_t y = 0; y < sb.cols(); ++y) {
              std::vector<Rational> col(l.dim, Rational(0));
              for (std::size_t p = 0; p < sa.rows(); ++p)
                for (std::size_t q = 0; q < sb.rows(); ++q) col[o + p * sb.rows() + q] = sa(p, x) * sb(q, y);
              cols.push_back(std::move(col));
            }
        }
      }
      if (cols.empty()) continue;
      QMatrix m = QMatrix::from_columns(l.dim, cols);
      step[k] = select_columns(m, independent_columns(m));
    }
    f.steps.push_back(step);
  }
  (void)t;
  return f;
}

/// Complex over the weight heart attached to a filtered object. The heart
/// object assgr_i[-i] sits in cohomological index -i; it is recorded by its
/// cohomology (the heart is semisimple), as the entry (g, -i) of the result,
/// and the differential is the connecting map of the filtration triangles.
inline Bigraded weight_complex(const Bigraded& v, const WeightFiltration& f) {
  const int nsteps = static_cast<int>(f.steps.size());
  // For each step i and bidegree: basis [S_{i-1} | T_i] and its left inverse.
  struct StepData {
    std::map<Bidegree, QMatrix> sub;    // basis of F_{i-1}
    std::map<Bidegree, QMatrix> comp;   // complement basis T_i
    std::map<Bidegree, QMatrix> coord;  // left inverse of [sub | comp]
  };
  std::vector<StepData> data(nsteps);
  for (int s = 0; s < nsteps; ++s) {
    for (const auto& [b, p] : v.entries()) {
      QMatrix prev = s ? detail::span_at(f.steps[s - 1], b, p.dim) : QMatrix(p.dim, 0);
      QMatrix cur = detail::span_at(f.steps[s], b, p.dim);
      QMatrix both = hcat(prev, cur);
      std::vector<std::size_t> extra;
      for (auto c : independent_columns(both))
        if (c >= prev.cols()) extra.push_back(c);
      QMatrix comp = select_columns(both, extra);
      data[s].sub[b] = prev;
      data[s].comp[b] = comp;
      data[s].coord[b] = left_inverse(hcat(prev, comp));
    }
  }
  // Sanity: the last step must be everything.
  for (const auto& [b, p] : v.entries()) {
    std::size_t total = 0;
    for (int s = 0; s < nsteps; ++s) total += data[s].comp[b].cols();
    if (total != p.dim) throw InvalidObject("filtration is not exhaustive");
  }
  auto comp_coords = [&](int s, Bidegree b, const std::vector<Rational>& x) {
    const QMatrix& l = data[s].coord.at(b);
    std::size_t off = data[s].sub.at(b).cols();
    std::vector<Rational> y = l.apply(x);
    return std::vector<Rational>(y.begin() + static_cast<std::ptrdiff_t>(off), y.end());
  };
  // Associated graded complexes and their cohomology.
  std::vector<std::map<Bidegree, CohomologyBasis>> coh(nsteps);
  std::vector<std::map<Bidegree, QMatrix>> grd(nsteps);
  for (int s = 0; s < nsteps; ++s) {
    for (const auto& [b, p] : v.entries()) {
      if (!v.entries().count(b.next())) continue;
      const QMatrix& t = data[s].comp.at(b);
      QMatrix d = v.differential(b);
      QMatrix m(data[s].comp.at(b.next()).cols(), t.cols());
      for (std::size_t j = 0; j < t.cols(); ++j) {
        auto y = comp_coords(s, b.next(), d.apply(t.column(j)));
        for (std::size_t i = 0; i < y.size(); ++i) m(i, j) = y[i];
      }
      grd[s][b] = m;
    }
    for (const auto& [b, p] : v.entries()) {
      std::size_t n = data[s].comp.at(b).cols();
      QMatrix din = grd[s].count(b.prev()) ? grd[s].at(b.prev()) : QMatrix(n, 0);
      QMatrix dout = grd[s].count(b) ? grd[s].at(b) : QMatrix(0, n);
      CohomologyBasis cb = cohomology_basis(din, dout, n);
      const int i = f.first + s;
      if (cb.dim() && b.weight() != i)
        throw ImpureQuotient("graded quotient " + std::to_string(i) + " has cohomology of weight " +
                             std::to_string(b.weight()));
      coh[s][b] = cb;
    }
  }
  Bigraded out;
  for (int s = 0; s < nsteps; ++s) {
    const int i = f.first + s;
    for (const auto& [b, cb] : coh[s])
      if (cb.dim()) out.set_entry({b.g, -i}, cb.dim());
  }
  for (int s = 1; s < nsteps; ++s) {
    const int i = f.first + s;
    for (const auto& [b, cb] : coh[s]) {
      if (!cb.dim()) continue;
      auto it = coh[s - 1].find(b.next());
      if (it == coh[s - 1].end() || !it->second.dim()) continue;
      const CohomologyBasis& target = it->second;
      QMatrix m(target.dim(), cb.dim());
      QMatrix d = v.differential(b);
      for (std::size_t j = 0; j < cb.dim(); ++j) {
        // Lift to F_i, apply d, land in F_{i-1}, project to assgr_{i-1}.
        std::vector<Rational> x = data[s].comp.at(b).apply(cb.reps.column(j));
        std::vector<Rational> dx = d.apply(x);
        std::vector<Rational> z = comp_coords(s - 1, b.next(), dx);
        std::vector<Rational> h = target.coords.apply(z);
        for (std::size_t r = 0; r < h.size(); ++r) m(r, j) = h[r];
      }
      out.set_differential({b.g, -i}, m);
    }
  }
  return out;
}

}  // namespace hecat
