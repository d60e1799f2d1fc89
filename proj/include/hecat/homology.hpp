#pragma once

// Hochschild homology of Soergel bimodules through the Koszul resolution of
// the diagonal, and triply graded homology of braid closures.
//
// For a bimodule B over R = Q[x_1..x_N] the Koszul chains are B (x) Lambda(theta_1..theta_N)
// with theta_j of internal degree 2 and Hochschild degree 1, and
//   d(b theta_J) = sum_k (-1)^(k-1) (x_{j_k} b - b x_{j_k}) theta_{J - j_k}.
// Everything is computed one internal degree g at a time.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hecat/complexes.hpp"
#include "hecat/errors.hpp"
#include "hecat/laurent.hpp"

namespace hecat {

/// Dimensions of HH_h(B) in internal degree g for g in [lo, hi], with the
/// Hilbert series of each HH_h written as numerators[h] / (1 - v^2)^nvars.
struct HochschildTable {
  std::size_t nvars = 0;
  int lo = 0, hi = 0;
  std::map<std::pair<int, int>, std::size_t> dims;  // (h, g)
  std::map<int, LaurentPoly> numerators;

  std::size_t dim(int h, int g) const {
    auto it = dims.find({h, g});
    return it == dims.end() ? 0 : it->second;
  }
};

/// Triply graded table: Hochschild degree h, internal degree g, chain degree c.
struct TriplyGraded {
  std::size_t nvars = 0;
  int lo = 0, hi = 0;
  std::map<std::tuple<int, int, int>, std::size_t> dims;  // (h, g, c)
  std::map<std::pair<int, int>, LaurentPoly> numerators;  // (h, c)

  std::size_t dim(int h, int g, int c) const {
    auto it = dims.find({h, g, c});
    return it == dims.end() ? 0 : it->second;
  }
};

namespace detail {

/// Basis of the Koszul chains of one chain group in bidegree (h, g): tuples
/// (summand, theta subset, left basis index, monomial).
struct KoszulBasis {
  struct Elem {
    std::size_t p;
    unsigned mask;
    std::size_t i;
    Monomial mono;
  };
  std::vector<Elem> elems;
  std::map<std::tuple<std::size_t, unsigned, std::size_t, Monomial>, std::size_t> index;

  std::size_t size() const { return elems.size(); }
  std::optional<std::size_t> find(std::size_t p, unsigned mask, std::size_t i, Monomial m) const {
    auto it = index.find({p, mask, i, m});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

inline int popcount(unsigned m) { return __builtin_popcount(m); }

template <class F>
KoszulBasis koszul_basis(const std::vector<Summand<F>>& term, std::size_t nvars, int h, int g) {
  KoszulBasis out;
  if (h < 0 || h > static_cast<int>(nvars)) return out;
  for (std::size_t p = 0; p < term.size(); ++p) {
    const Bimodule<F>& b = term[p].object;
    for (unsigned mask = 0; mask < (1u << nvars); ++mask) {
      if (popcount(mask) != h) continue;
      for (std::size_t i = 0; i < b.rank(); ++i) {
        const int e = g - 2 * h - b.degree(i);
        if (e < 0 || e % 2) continue;
        for (Monomial m : monomials_of_degree(nvars, e / 2)) {
          out.index[{p, mask, i, m}] = out.elems.size();
          out.elems.push_back({p, mask, i, m});
        }
      }
    }
  }
  return out;
}

template <class F>
using Column = std::map<std::size_t, F>;

template <class F>
SparseRow<F> to_row(const Column<F>& c) {
  SparseRow<F> r;
  for (const auto& [k, x] : c)
    if (!is_zero(x)) r.emplace_back(k, x);
  return r;
}

/// Images of the basis of `src` under the Koszul differential, in `dst`.
template <class F>
std::vector<Column<F>> koszul_columns(const std::vector<Summand<F>>& term, const KoszulBasis& src,
                                      const KoszulBasis& dst) {
  std::vector<Column<F>> cols(src.size());
  for (std::size_t u = 0; u < src.size(); ++u) {
    const auto& el = src.elems[u];
    const Bimodule<F>& b = term[el.p].object;
    int k = 0;
    for (unsigned j = 0; j < 32; ++j) {
      if (!(el.mask & (1u << j))) continue;
      const F sign = k % 2 ? F(-1) : F(1);
      ++k;
      const unsigned mask = el.mask ^ (1u << j);
      // x_j b
      if (auto t = dst.find(el.p, mask, el.i, el.mono + var_monomial(j))) cols[u][*t] += sign;
      // - b x_j
      const PolyMatrix<F>& mj = b.right_action(j);
      for (std::size_t r = 0; r < b.rank(); ++r)
        for (const auto& [m, x] : mj(r, el.i).terms()) {
          auto t = dst.find(el.p, mask, r, el.mono + m);
          if (!t) throw InvalidObject("Koszul differential leaves the expected degree");
          cols[u][*t] -= sign * x;
        }
    }
  }
  return cols;
}

/// Images of the basis of the chains of C^c under the chain differential.
template <class F>
std::vector<Column<F>> chain_columns(const BimoduleComplex<F>& c, int deg, const KoszulBasis& src,
                                     const KoszulBasis& dst) {
  std::vector<Column<F>> cols(src.size());
  std::map<std::size_t, std::vector<std::pair<std::size_t, const PolyMatrix<F>*>>> out_of;
  for (const auto& [key, f] : c.differential(deg)) out_of[key.second].emplace_back(key.first, &f);
  for (std::size_t u = 0; u < src.size(); ++u) {
    const auto& el = src.elems[u];
    auto it = out_of.find(el.p);
    if (it == out_of.end()) continue;
    for (const auto& [q, f] : it->second)
      for (std::size_t r = 0; r < f->rows(); ++r)
        for (const auto& [m, x] : (*f)(r, el.i).terms()) {
          auto t = dst.find(q, el.mask, r, el.mono + m);
          if (!t) throw InvalidObject("chain differential leaves the expected degree");
          cols[u][*t] += x;
        }
  }
  return cols;
}

/// Kernel basis of the map given by its columns (on a space of dimension n).
template <class F>
std::vector<SparseRow<F>> kernel_of(const std::vector<Column<F>>& cols, std::size_t n) {
  std::map<std::size_t, SparseRow<F>> rows;
  for (std::size_t u = 0; u < cols.size(); ++u)
    for (const auto& [r, x] : cols[u])
      if (!is_zero(x)) rows[r].emplace_back(u, x);
  SparseEchelon<F> ech(n);
  for (const auto& [r, row] : rows) ech.add(row);
  return ech.kernel();
}

template <class F>
SparseEchelon<F> span_of(const std::vector<Column<F>>& cols, std::size_t n) {
  SparseEchelon<F> ech(n);
  for (const auto& c : cols) ech.add(to_row(c));
  return ech;
}

/// Lowest and highest degree of a basis element over all terms.
template <class F>
std::pair<int, int> internal_degree_range(const BimoduleComplex<F>& c) {
  std::optional<int> lo, hi;
  for (const auto& [i, t] : c.terms())
    for (const auto& s : t)
      if (s.object.rank()) {
        lo = std::min(lo.value_or(s.object.min_degree()), s.object.min_degree());
        hi = std::max(hi.value_or(s.object.max_degree()), s.object.max_degree());
      }
  return {lo.value_or(0), hi.value_or(0)};
}

/// Numerator of the Hilbert series sum_g dims[g] v^g times (1 - v^2)^n, or
/// nullopt when the truncated product does not vanish on the upper half of
/// the window (the series has not visibly stabilized).
inline std::optional<LaurentPoly> stable_numerator(const std::map<int, long long>& series, std::size_t n, int lo,
                                                   int hi) {
  LaurentPoly s;
  for (const auto& [g, x] : series) s.add(g, x);
  LaurentPoly f = 1;
  for (std::size_t k = 0; k < n; ++k) f *= LaurentPoly(1) - LaurentPoly::monomial(2);
  LaurentPoly prod = s * f, num;
  for (const auto& [g, x] : prod.terms()) {
    if (g > hi) continue;
    if (2 * (g - lo) > hi - lo) return std::nullopt;
    num.add(g, x);
  }
  return num;
}

}  // namespace detail

/// The Hochschild table of a complex: homology in the chain direction of the
/// termwise Hochschild homology, for internal degrees in [lo, lo + width].
/// Throws WindowTooSmall when some Hilbert series has not stabilized.
template <class F>
TriplyGraded hochschild_homology_table(const BimoduleComplex<F>& c, int width) {
  const std::size_t n = c.ring()->num_vars();
  if (n > 16) throw InvalidObject("too many variables for the Koszul complex");
  TriplyGraded out;
  out.nvars = n;
  auto range = c.degree_range();
  const auto [lo, top] = detail::internal_degree_range(c);
  out.lo = lo;
  out.hi = out.lo + width;
  if (!range) return out;
  // The Koszul chains are generated below top + 2n; a window ending there
  // cannot tell a finished series from a truncated one.
  if (out.hi < top + 2 * static_cast<int>(n) + 2)
    throw WindowTooSmall("internal-degree window ends at " + std::to_string(out.hi) +
                         ", below the Koszul generators (up to degree " + std::to_string(top + 2 * static_cast<int>(n)) + ")");

  for (int h = 0; h <= static_cast<int>(n); ++h) {
    for (int g = out.lo + 2 * h; g <= out.hi; ++g) {
      std::map<int, detail::KoszulBasis> basis;
      std::map<int, std::vector<SparseRow<F>>> cycles;
      std::map<int, SparseEchelon<F>> bounds;
      std::map<int, std::size_t> homology;
      for (int i = range->first; i <= range->second; ++i) {
        const auto& term = c.term(i);
        basis[i] = detail::koszul_basis(term, n, h, g);
        const auto& here = basis[i];
        if (here.size() == 0) {
          homology[i] = 0;
          bounds.emplace(i, SparseEchelon<F>(0));
          continue;
        }
        const auto below = detail::koszul_basis(term, n, h - 1, g);
        const auto above = detail::koszul_basis(term, n, h + 1, g);
        cycles[i] = below.size() ? detail::kernel_of(detail::koszul_columns<F>(term, here, below), here.size())
                                 : [&] {
                                     std::vector<SparseRow<F>> all;
                                     for (std::size_t u = 0; u < here.size(); ++u) all.push_back({{u, F(1)}});
                                     return all;
                                   }();
        bounds.emplace(i, detail::span_of(detail::koszul_columns<F>(term, above, here), here.size()));
        homology[i] = cycles[i].size() - bounds.at(i).rank();
      }
      // ranks of the induced chain maps
      std::map<int, std::size_t> induced;
      for (int i = range->first; i < range->second; ++i) {
        if (homology[i] == 0 || homology[i + 1] == 0) {
          induced[i] = 0;
          continue;
        }
        const auto cols = detail::chain_columns(c, i, basis[i], basis[i + 1]);
        SparseEchelon<F> ech = bounds.at(i + 1);
        const std::size_t base = ech.rank();
        for (const auto& z : cycles[i]) {
          detail::Column<F> img;
          for (const auto& [u, x] : z)
            for (const auto& [t, y] : cols[u]) img[t] += x * y;
          ech.add(detail::to_row(img));
        }
        induced[i] = ech.rank() - base;
      }
      for (int i = range->first; i <= range->second; ++i) {
        const std::size_t d = homology[i] - (induced.count(i) ? induced[i] : 0) - (induced.count(i - 1) ? induced[i - 1] : 0);
        if (d) out.dims[{h, g, i}] = d;
      }
    }
  }
  std::map<std::pair<int, int>, std::map<int, long long>> series;
  for (const auto& [key, d] : out.dims) {
    const auto& [h, g, i] = key;
    series[{h, i}][g] += static_cast<long long>(d);
  }
  for (const auto& [hc, s] : series) {
    auto num = detail::stable_numerator(s, n, out.lo, out.hi);
    if (!num)
      throw WindowTooSmall("Hilbert series in (h, c) = (" + std::to_string(hc.first) + ", " +
                           std::to_string(hc.second) + ") has not stabilized below internal degree " +
                           std::to_string(out.hi));
    out.numerators[hc] = *num;
  }
  return out;
}

/// HH of a single bimodule.
template <class F>
HochschildTable hochschild(const Bimodule<F>& b, std::optional<int> width = std::nullopt) {
  auto cat = SoergelCategory<F>::make(b.ring());
  int w = width.value_or(window_override().value_or(std::max(12, 2 * (b.spread() + 2 * static_cast<int>(b.ring()->num_vars()) + 2))));
  for (int attempt = 0;; ++attempt) {
    try {
      TriplyGraded t = hochschild_homology_table(bimodule_complex(cat, b), w);
      HochschildTable out;
      out.nvars = t.nvars;
      out.lo = t.lo;
      out.hi = t.hi;
      for (const auto& [key, d] : t.dims) out.dims[{std::get<0>(key), std::get<1>(key)}] = d;
      for (const auto& [hc, num] : t.numerators) out.numerators[hc.first] = num;
      return out;
    } catch (const WindowTooSmall&) {
      if (width || attempt >= 2) throw;
      w *= 2;
    }
  }
}

/// Tensors a table with HH(Q[z]) = Q[z] (x) Lambda(theta): z in (g 2, h 0),
/// theta in (g 2, h 1). Turns sl-realization tables into gl ones.
inline TriplyGraded tensor_with_line(const TriplyGraded& t) {
  TriplyGraded out;
  out.nvars = t.nvars + 1;
  out.lo = t.lo;
  out.hi = t.hi;
  for (const auto& [key, d] : t.dims) {
    const auto& [h, g, c] = key;
    for (int k = 0; g + 2 * k <= t.hi; ++k) {
      out.dims[{h, g + 2 * k, c}] += d;
      if (g + 2 * k + 2 <= t.hi) out.dims[{h + 1, g + 2 * k + 2, c}] += d;
    }
  }
  for (const auto& [hc, num] : t.numerators) {
    out.numerators[hc] += num;
    out.numerators[{hc.first + 1, hc.second}] += num * LaurentPoly::monomial(2);
  }
  for (auto it = out.numerators.begin(); it != out.numerators.end();) {
    if (it->second.is_zero()) it = out.numerators.erase(it);
    else ++it;
  }
  return out;
}

/// The realization of S_n on the hyperplane sum e_i = 0 (the root
/// realization of A_{n-1}); one strand gives the trivial group.
inline CoxeterSystem<Rational> sl_system(int strands) {
  if (strands < 1) throw NotTypeA("need at least one strand");
  if (strands == 1) return CoxeterSystem<Rational>::from_coxeter_matrix({}, "A0");
  return CoxeterSystem<Rational>::named("A" + std::to_string(strands - 1));
}

inline int default_homology_window(int strands, std::size_t length) {
  if (auto w = window_override()) return *w;
  return 2 * strands * (static_cast<int>(length) + 4);
}

/// Triply graded homology of the closure of a braid on `strands` strands:
/// HH applied termwise to the Rouquier complex, then homology in the chain
/// direction. The computation runs over the sl realization and is tensored
/// with HH(Q[z]) at the end, which gives the gl_n answer.
inline TriplyGraded triply_graded(int strands, const BraidWord& braid, std::optional<int> width = std::nullopt) {
  auto cat = SoergelCategory<Rational>::make(sl_system(strands));
  for (const auto& l : braid)
    if (l.gen < 0 || l.gen + 1 >= strands) throw NotTypeA("braid generator outside the strand range");
  BimoduleComplex<Rational> c = rouquier(cat, braid);
  int w = width.value_or(default_homology_window(strands, braid.size()));
  for (int attempt = 0;; ++attempt) {
    try {
      return tensor_with_line(hochschild_homology_table(c, w));
    } catch (const WindowTooSmall&) {
      if (width || attempt >= 2) throw;
      w *= 2;
    }
  }
}

/// sum (-1)^c a^h v^g dim, summed through the stabilized Hilbert series.
inline VFraction euler_characteristic(const TriplyGraded& t) {
  Laurent2 num;
  for (const auto& [hc, p] : t.numerators)
    for (const auto& [g, x] : p.terms()) num.add(hc.first, g, hc.second % 2 ? -x : x);
  return VFraction(num, static_cast<int>(t.nvars));
}

inline VFraction euler_characteristic(const HochschildTable& t) {
  Laurent2 num;
  for (const auto& [h, p] : t.numerators)
    for (const auto& [g, x] : p.terms()) num.add(h, g, x);
  return VFraction(num, static_cast<int>(t.nvars));
}

}  // namespace hecat
