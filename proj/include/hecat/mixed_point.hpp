#pragma once

// Point model of mixed complexes: a bigraded complex whose graded degree is
// the naive Frobenius weight, together with the unit part theta of Frobenius
// on every bidegree, over the base pt_n.

#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hecat/bigraded.hpp"
#include "hecat/errors.hpp"

namespace hecat {

namespace detail {
inline QMatrix matrix_power(const QMatrix& m, long e) {
  QMatrix r = QMatrix::identity(m.rows()), b = m;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}
inline bool is_nilpotent(const QMatrix& m) { return matrix_power(m, static_cast<long>(m.rows())).is_zero(); }
}  // namespace detail

class MixedObject {
 public:
  /// Largest order searched when no witness is supplied.
  static constexpr int kMaxOrder = 120;

  MixedObject() = default;
  /// `theta` must contain an invertible matrix for every nonzero bidegree.
  /// `order` is the witness r with theta^r unipotent; 0 asks for a search.
  MixedObject(Bigraded underlying, std::map<Bidegree, QMatrix> theta, int level, int order = 0)
      : v_(std::move(underlying)), theta_(std::move(theta)), level_(level), order_(order) {
    validate();
  }

  static MixedObject unit(int level = 1) {
    return MixedObject(Bigraded::unit(), {{Bidegree{0, 0}, QMatrix::identity(1)}}, level, 1);
  }

  const Bigraded& underlying() const { return v_; }
  const std::map<Bidegree, QMatrix>& theta() const { return theta_; }
  const QMatrix& theta(Bidegree b) const { return theta_.at(b); }
  int level() const { return level_; }
  int order() const { return order_; }

 private:
  void validate() {
    if (level_ <= 0) throw BadLevels("level must be positive");
    v_.validate();
    for (const auto& [b, p] : v_.entries()) {
      auto it = theta_.find(b);
      if (it == theta_.end()) throw InvalidObject("theta missing at a nonzero bidegree");
      if (it->second.rows() != p.dim || it->second.cols() != p.dim) throw InvalidObject("theta has the wrong shape");
      if (!inverse(it->second)) throw InvalidObject("theta is not invertible");
    }
    for (auto it = theta_.begin(); it != theta_.end();) {
      if (!v_.dim(it->first)) it = theta_.erase(it);
      else ++it;
    }
    for (const auto& [b, m] : v_.differentials())
      if (!(theta_.at(b.next()) * m == m * theta_.at(b))) throw InvalidObject("theta does not commute with d");
    auto unipotent_at = [&](int r) {
      for (const auto& [b, t] : theta_)
        if (!detail::is_nilpotent(detail::matrix_power(t, r) - QMatrix::identity(t.rows()))) return false;
      return true;
    };
    if (order_ > 0) {
      if (!unipotent_at(order_)) throw InvalidObject("theta^r is not unipotent for the given witness");
      return;
    }
    for (int r = 1; r <= kMaxOrder; ++r)
      if (unipotent_at(r)) {
        order_ = r;
        return;
      }
    throw InvalidObject("theta is not quasi-unipotent within the search bound");
  }

  Bigraded v_;
  std::map<Bidegree, QMatrix> theta_;
  int level_ = 1;
  int order_ = 0;
};

/// Frobenius semisimplification: forget theta, keep the naive weight grading.
inline Bigraded gr(const MixedObject& m) { return m.underlying(); }

/// Moves weight g to g - k (graded shift of the mixed object itself).
inline MixedObject shift_gr(const MixedObject& m, int k) {
  std::map<Bidegree, QMatrix> th;
  for (const auto& [b, t] : m.theta()) th[{b.g - k, b.c}] = t;
  return MixedObject(shift_gr(m.underlying(), k), th, m.level(), m.order());
}

/// Twist by k with 2k an integer: weights move by -2k.
inline MixedObject tate_twist(const MixedObject& m, const Rational& k) {
  Rational twice = 2 * k;
  twice.canonicalize();
  if (twice.get_den() != 1) throw NonHalfIntegerTwist("twist " + k.get_str() + " is not a half-integer");
  return shift_gr(m, static_cast<int>(twice.get_num().get_si()));
}

inline MixedObject tensor(const MixedObject& m, const MixedObject& n) {
  if (m.level() != n.level()) throw LevelMismatch("tensor of objects over different bases");
  Bigraded t = tensor(m.underlying(), n.underlying());
  std::map<Bidegree, QMatrix> th;
  for (const auto& [k, p] : t.entries()) th[k] = QMatrix(p.dim, p.dim);
  std::map<Bidegree, std::size_t> offset;
  for (const auto& [a, ta] : m.theta())
    for (const auto& [b, tb] : n.theta()) {
      Bidegree k{a.g + b.g, a.c + b.c};
      std::size_t& o = offset[k];
      QMatrix& dst = th[k];
      const std::size_t nb = tb.rows();
      for (std::size_t x = 0; x < ta.rows(); ++x)
        for (std::size_t x2 = 0; x2 < ta.cols(); ++x2)
          for (std::size_t y = 0; y < nb; ++y)
            for (std::size_t y2 = 0; y2 < nb; ++y2) dst(o + x * nb + y, o + x2 * nb + y2) = ta(x, x2) * tb(y, y2);
      o += ta.rows() * nb;
    }
  return MixedObject(t, th, m.level(), std::lcm(m.order(), n.order()));
}

/// Enriched Hom: underlying complex hom_complex(gr M, gr N) graded by
/// relative weight; theta acts by f -> theta_N f theta_M^{-1}.
inline MixedObject hom_enriched(const MixedObject& m, const MixedObject& n) {
  if (m.level() != n.level()) throw LevelMismatch("enriched Hom needs a common base");
  const Bigraded& v = m.underlying();
  const Bigraded& w = n.underlying();
  Bigraded h = hom_complex(v, w);
  std::map<Bidegree, QMatrix> inv;
  for (const auto& [b, t] : m.theta()) inv[b] = *inverse(t);
  std::map<Bidegree, QMatrix> th;
  std::map<Bidegree, std::size_t> offset;
  for (const auto& [k, p] : h.entries()) th[k] = QMatrix(p.dim, p.dim);
  // Same block order as hom_complex: sources outer, targets inner.
  for (const auto& [a, pa] : v.entries())
    for (const auto& [b, pb] : w.entries()) {
      Bidegree k{b.g - a.g, b.c - a.c};
      std::size_t& o = offset[k];
      const QMatrix& tn = n.theta(b);
      const QMatrix& ti = inv.at(a);
      const std::size_t na = pa.dim, nb = pb.dim;
      QMatrix& dst = th[k];
      for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < na; ++j)
          for (std::size_t i2 = 0; i2 < nb; ++i2)
            for (std::size_t j2 = 0; j2 < na; ++j2) dst(o + i2 * na + j2, o + i * na + j) = tn(i2, i) * ti(j, j2);
      o += na * nb;
    }
  int order = std::lcm(m.order(), n.order());
  return MixedObject(h, th, m.level(), order);
}

/// Hom in the graded category, built directly as the sum over weights g of
/// Hom(M_g, N_g); returned with graded degree 0.
inline Bigraded hom_graded(const MixedObject& m, const MixedObject& n) {
  if (m.level() != n.level()) throw LevelMismatch("graded Hom needs a common base");
  Bigraded total;
  for (int g : m.underlying().graded_degrees()) {
    Bigraded a = graded_piece(m.underlying(), g);
    Bigraded b = graded_piece(n.underlying(), g);
    if (b.is_zero()) continue;
    total = direct_sum(total, graded_piece(hom_complex(a, b), 0));
  }
  return total;
}

/// Total mixed Hom: the cone of (1 - theta) on the weight-0 part of the
/// enriched Hom. Degree c holds X^c (+) X^{c-1}.
inline Bigraded hom_mixed(const MixedObject& m, const MixedObject& n) {
  MixedObject h = hom_enriched(m, n);
  Bigraded x = graded_piece(h.underlying(), 0);
  Bigraded r;
  std::map<int, std::size_t> dims;
  for (const auto& [b, p] : x.entries()) dims[b.c] = p.dim;
  std::map<int, bool> cs;
  for (const auto& [c, d] : dims) {
    cs[c] = true;
    cs[c + 1] = true;
  }
  auto dim_at = [&](int c) { return dims.count(c) ? dims.at(c) : std::size_t{0}; };
  for (const auto& [c, _] : cs) r.set_entry({0, c}, dim_at(c) + dim_at(c - 1));
  for (const auto& [c, _] : cs) {
    if (!cs.count(c + 1)) continue;
    const std::size_t a = dim_at(c), b = dim_at(c - 1), a2 = dim_at(c + 1);
    QMatrix d(a2 + a, a + b);
    d.place(0, 0, x.differential({0, c}));
    if (a) {
      QMatrix t = h.theta({0, c});
      d.place(a2, 0, QMatrix::identity(a) - t);
    }
    d.place(a2, a, x.differential({0, c - 1}).scaled(Rational(-1)));
    r.set_differential({0, c}, d);
  }
  return r;
}

/// Extension of scalars from pt_m to pt_n (n | m): m/n copies of the space,
/// theta the companion block whose (m/n)-th power is theta on every copy.
inline MixedObject induce(const MixedObject& m, int to_level) {
  if (to_level <= 0 || m.level() % to_level != 0)
    throw BadLevels("cannot induce from level " + std::to_string(m.level()) + " to " + std::to_string(to_level));
  const std::size_t e = static_cast<std::size_t>(m.level() / to_level);
  if (e == 1) return m;
  Bigraded v;
  for (const auto& [b, p] : m.underlying().entries()) {
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < e; ++k)
      for (const auto& l : p.labels) labels.push_back(l + "#" + std::to_string(k));
    v.set_entry(b, p.dim * e, labels);
  }
  for (const auto& [b, d] : m.underlying().differentials()) {
    QMatrix big(d.rows() * e, d.cols() * e);
    for (std::size_t k = 0; k < e; ++k) big.place(k * d.rows(), k * d.cols(), d);
    v.set_differential(b, big);
  }
  std::map<Bidegree, QMatrix> th;
  for (const auto& [b, t] : m.theta()) {
    const std::size_t n = t.rows();
    QMatrix c(n * e, n * e);
    for (std::size_t k = 0; k + 1 < e; ++k) c.place(k * n, (k + 1) * n, QMatrix::identity(n));
    c.place((e - 1) * n, 0, t);
    th[b] = c;
  }
  return MixedObject(v, th, to_level, m.order() * static_cast<int>(e));
}

/// Outcome of the sum-over-shifts identity: for every cohomological degree,
/// sum_k dim Hom_gr(M, N<k>) against the dimension of the fully forgotten Hom.
struct ShiftSumWitness {
  std::map<int, std::size_t> graded_side;
  std::map<int, std::size_t> forgotten_side;
  bool pass = false;
};

inline ShiftSumWitness oblv_gr_sum(const MixedObject& m, const MixedObject& n) {
  if (m.level() != n.level()) throw LevelMismatch("sum over shifts needs a common base");
  ShiftSumWitness w;
  auto gm = m.underlying().graded_degrees(), gn = n.underlying().graded_degrees();
  if (!gm.empty() && !gn.empty()) {
    for (int k = gn.front() - gm.back(); k <= gn.back() - gm.front(); ++k) {
      Bigraded h = hom_graded(m, shift_gr(n, k));
      for (const auto& [b, p] : h.entries()) w.graded_side[b.c] += p.dim;
    }
  }
  const Bigraded forgotten = hom_complex(gr(m), gr(n));
  for (const auto& [b, p] : forgotten.entries()) w.forgotten_side[b.c] += p.dim;
  w.pass = w.graded_side == w.forgotten_side;
  return w;
}

/// Explicit splitting of H^0 of the graded Hom off H^0 of the Hom with theta
/// and the grading forgotten.
struct SummandSplitting {
  QMatrix inclusion;   // H^0(total) x H^0(graded)
  QMatrix projection;  // H^0(graded) x H^0(total)
  bool pass = false;
};

inline SummandSplitting graded_hom_summand(const MixedObject& m, const MixedObject& n) {
  Bigraded graded = hom_graded(m, n);
  Bigraded full = hom_complex(gr(m), gr(n));
  // Total complex in degrees -1, 0, 1: sum over all graded pieces.
  std::vector<int> gs = full.graded_degrees();
  auto offsets = [&](int c) {
    std::map<int, std::size_t> o;
    std::size_t acc = 0;
    for (int g : gs) {
      o[g] = acc;
      acc += full.dim({g, c});
    }
    o[1 << 30] = acc;
    return o;
  };
  auto o_m = offsets(-1), o_0 = offsets(0), o_1 = offsets(1);
  const std::size_t n_m = o_m.at(1 << 30), n_0 = o_0.at(1 << 30), n_1 = o_1.at(1 << 30);
  QMatrix din(n_0, n_m), dout(n_1, n_0);
  for (int g : gs) {
    din.place(o_0.at(g), o_m.at(g), full.differential({g, -1}));
    dout.place(o_1.at(g), o_0.at(g), full.differential({g, 0}));
  }
  CohomologyBasis total = cohomology_basis(din, dout, n_0);
  const std::size_t k = graded.dim({0, 0});
  CohomologyBasis gh = cohomology_basis(graded.differential({0, -1}), graded.differential({0, 0}), k);
  SummandSplitting s;
  s.inclusion = QMatrix(total.dim(), gh.dim());
  s.projection = QMatrix(gh.dim(), total.dim());
  // The graded Hom is the weight-0 block of the full Hom at the same coordinates.
  const std::size_t off0 = o_0.count(0) ? o_0.at(0) : 0;
  const std::size_t len0 = full.dim({0, 0});
  if (len0 != k) return s;
  for (std::size_t j = 0; j < gh.dim(); ++j) {
    std::vector<Rational> x(n_0, Rational(0));
    for (std::size_t i = 0; i < k; ++i) x[off0 + i] = gh.reps(i, j);
    auto y = total.coords.apply(x);
    for (std::size_t i = 0; i < y.size(); ++i) s.inclusion(i, j) = y[i];
  }
  for (std::size_t j = 0; j < total.dim(); ++j) {
    std::vector<Rational> z(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) z[i] = total.reps(off0 + i, j);
    auto y = gh.coords.apply(z);
    for (std::size_t i = 0; i < y.size(); ++i) s.projection(i, j) = y[i];
  }
  s.pass = (s.projection * s.inclusion) == QMatrix::identity(gh.dim());
  return s;
}

}  // namespace hecat
