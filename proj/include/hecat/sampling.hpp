#pragma once

// Random small objects for property suites. Everything is driven by an
// explicit std::mt19937_64 so runs are reproducible from a seed.

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hecat/bigraded.hpp"
#include "hecat/mixed_point.hpp"

namespace hecat {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random invertible integer matrix (product of unitriangular factors).
inline QMatrix random_invertible(Rng& rng, std::size_t n) {
  QMatrix l = QMatrix::identity(n), u = QMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = uniform_int(rng, -2, 2);
      u(j, i) = uniform_int(rng, -2, 2);
    }
  return l * u;
}

struct BigradedSampleOptions {
  int gmin = -2, gmax = 2, cmin = -2, cmax = 2;
  int max_cells = 4;
  std::optional<int> max_weight;  // constraint on cohomology (line cells)
  std::optional<int> min_weight;
  bool diagonal = false;  // line cells only on g == c
  int pair_percent = 40;
};

namespace detail {
struct Cell {
  Bidegree at;
  bool pair = false;  // acyclic pair at -> at.next() with identity d
  std::size_t width = 1;
  QMatrix theta;  // width x width
};

inline std::map<Bidegree, std::size_t> cell_dims(const std::vector<Cell>& cells) {
  std::map<Bidegree, std::size_t> dims;
  for (const auto& c : cells) {
    dims[c.at] += c.width;
    if (c.pair) dims[c.at.next()] += c.width;
  }
  return dims;
}

// Assembles d and theta in the cell basis, then conjugates by `change`.
inline std::pair<Bigraded, std::map<Bidegree, QMatrix>> assemble(const std::vector<Cell>& cells,
                                                                  const std::map<Bidegree, QMatrix>& change) {
  auto dims = cell_dims(cells);
  Bigraded v;
  for (const auto& [b, n] : dims) v.set_entry(b, n);
  std::map<Bidegree, std::size_t> fill;
  std::map<Bidegree, QMatrix> d, th;
  for (const auto& [b, n] : dims) th[b] = QMatrix(n, n);
  for (const auto& c : cells) {
    std::size_t o = fill[c.at];
    fill[c.at] += c.width;
    th[c.at].place(o, o, c.theta);
    if (c.pair) {
      Bidegree t = c.at.next();
      std::size_t o2 = fill[t];
      fill[t] += c.width;
      th[t].place(o2, o2, c.theta);
      if (!d.count(c.at)) d[c.at] = QMatrix(dims.at(t), dims.at(c.at));
      d[c.at].place(o2, o, QMatrix::identity(c.width));
    }
  }
  for (auto& [b, m] : d) {
    QMatrix p = change.at(b), q = change.at(b.next());
    v.set_differential(b, q * m * *inverse(p));
  }
  for (auto& [b, t] : th) t = change.at(b) * t * *inverse(change.at(b));
  return {v, th};
}
}  // namespace detail

inline Bigraded random_bigraded(Rng& rng, const BigradedSampleOptions& o = {}) {
  std::vector<detail::Cell> cells;
  const int n = uniform_int(rng, 1, o.max_cells);
  for (int k = 0; k < n; ++k) {
    detail::Cell c;
    c.theta = QMatrix::identity(1);
    c.pair = uniform_int(rng, 1, 100) <= o.pair_percent;
    for (int attempt = 0; attempt < 100; ++attempt) {
      c.at = {uniform_int(rng, o.gmin, o.gmax), uniform_int(rng, o.cmin, o.cmax)};
      if (c.pair) break;
      if (o.diagonal) c.at.c = c.at.g;
      if (o.max_weight && c.at.weight() > *o.max_weight) continue;
      if (o.min_weight && c.at.weight() < *o.min_weight) continue;
      break;
    }
    if (!c.pair && ((o.max_weight && c.at.weight() > *o.max_weight) ||
                    (o.min_weight && c.at.weight() < *o.min_weight)))
      continue;
    cells.push_back(c);
  }
  std::map<Bidegree, QMatrix> change;
  for (const auto& [b, dim] : detail::cell_dims(cells)) change[b] = random_invertible(rng, dim);
  return detail::assemble(cells, change).first;
}

namespace detail {
inline QMatrix random_theta(Rng& rng, std::size_t width) {
  if (width == 1) return QMatrix::identity(1).scaled(Rational(uniform_int(rng, 0, 1) ? 1 : -1));
  QMatrix t(2, 2);
  switch (uniform_int(rng, 0, 5)) {
    case 0:  // swap
      t(0, 1) = 1;
      t(1, 0) = 1;
      break;
    case 1:  // unipotent Jordan block
      t(0, 0) = 1;
      t(0, 1) = 1;
      t(1, 1) = 1;
      break;
    case 2:  // order 3
      t(0, 1) = -1;
      t(1, 0) = 1;
      t(1, 1) = -1;
      break;
    case 3:  // order 4
      t(0, 1) = -1;
      t(1, 0) = 1;
      break;
    case 4:  // -Jordan
      t(0, 0) = -1;
      t(0, 1) = 1;
      t(1, 1) = -1;
      break;
    default:
      t = QMatrix::identity(2);
  }
  return t;
}
}  // namespace detail

/// A pair of mixed objects sharing the underlying complex but carrying
/// independently drawn thetas.
struct MixedSample {
  MixedObject object;
  MixedObject retheta;
};

inline MixedSample random_mixed(Rng& rng, std::size_t max_rank = 4, int wmin = -3, int wmax = 3, int level = 1) {
  std::vector<detail::Cell> cells;
  std::size_t rank = 0;
  const std::size_t target = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_rank)));
  while (rank < target) {
    detail::Cell c;
    c.at = {uniform_int(rng, wmin, wmax), uniform_int(rng, -1, 1)};
    c.pair = uniform_int(rng, 0, 3) == 0;
    c.width = uniform_int(rng, 0, 2) == 0 ? 2 : 1;
    std::size_t cost = c.width * (c.pair ? 2 : 1);
    if (rank + cost > max_rank) {
      c.pair = false;
      c.width = 1;
      cost = 1;
    }
    rank += cost;
    cells.push_back(c);
  }
  std::map<Bidegree, QMatrix> change;
  for (const auto& [b, dim] : detail::cell_dims(cells)) change[b] = random_invertible(rng, dim);
  for (auto& c : cells) c.theta = detail::random_theta(rng, c.width);
  auto [v, th] = detail::assemble(cells, change);
  for (auto& c : cells) c.theta = detail::random_theta(rng, c.width);
  auto [v2, th2] = detail::assemble(cells, change);
  return {MixedObject(v, th, level), MixedObject(v2, th2, level)};
}

/// A random object together with a random (generally non-canonical) weight
/// filtration: acyclic pairs are assigned to either of their two weights.
struct FilteredSample {
  Bigraded object;
  WeightFiltration filtration;
};

inline FilteredSample random_filtered(Rng& rng, int max_cells = 3) {
  struct Placed {
    detail::Cell cell;
    int level;  // filtration index at which the cell enters
  };
  std::vector<Placed> placed;
  const int n = uniform_int(rng, 1, max_cells);
  for (int k = 0; k < n; ++k) {
    Placed p;
    p.cell.theta = QMatrix::identity(1);
    p.cell.at = {uniform_int(rng, -2, 2), uniform_int(rng, -2, 2)};
    p.cell.pair = uniform_int(rng, 0, 2) == 0;
    // A pair spans weights w (source) and w - 1 (target); it may enter at
    // w - 1 as a whole (acyclic quotient) or split canonically.
    p.level = p.cell.at.weight() - (p.cell.pair && uniform_int(rng, 0, 1) ? 1 : 0);
    placed.push_back(p);
  }
  std::vector<detail::Cell> cells;
  for (const auto& p : placed) cells.push_back(p.cell);
  auto dims = detail::cell_dims(cells);
  std::map<Bidegree, QMatrix> change;
  for (const auto& [b, dim] : dims) change[b] = random_invertible(rng, dim);
  FilteredSample s;
  s.object = detail::assemble(cells, change).first;
  int lo = 1 << 20, hi = -(1 << 20);
  for (const auto& p : placed) {
    lo = std::min(lo, p.cell.pair ? p.cell.at.weight() - 1 : p.level);
    hi = std::max(hi, p.cell.at.weight());
  }
  s.filtration.first = lo;
  for (int i = lo; i <= hi; ++i) {
    std::map<Bidegree, std::vector<std::vector<Rational>>> cols;
    std::map<Bidegree, std::size_t> fill;
    for (const auto& p : placed) {
      const auto& c = p.cell;
      // Basis vectors of the cell in the original cell basis, mapped by `change`.
      auto emit = [&](Bidegree b, bool include) {
        std::size_t o = fill[b];
        fill[b] += c.width;
        if (!include) return;
        for (std::size_t w = 0; w < c.width; ++w) {
          std::vector<Rational> e(dims.at(b), Rational(0));
          e[o + w] = 1;
          cols[b].push_back(change.at(b).apply(e));
        }
      };
      if (c.pair) {
        bool whole = p.level < c.at.weight();
        // The source (weight w) enters at w, or together with its target at w - 1.
        emit(c.at, whole ? i >= p.level : i >= c.at.weight());
        emit(c.at.next(), i >= c.at.weight() - 1);
      } else {
        emit(c.at, i >= c.at.weight());
      }
    }
    std::map<Bidegree, QMatrix> step;
    for (const auto& [b, cs] : cols) step[b] = QMatrix::from_columns(dims.at(b), cs);
    s.filtration.steps.push_back(step);
  }
  return s;
}

}  // namespace hecat
