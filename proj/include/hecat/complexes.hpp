#pragma once

// Bounded complexes of Soergel bimodules. The differential raises the chain
// degree, and d_i(q, p) is the component from summand p of C^i to summand q of
// C^{i+1}. Summands are either raw bimodules or labelled copies B_x<k> of a
// fixed model of the indecomposable B_x; Gaussian elimination and the homotopy
// test work with labels.
//
// Weights: a term in chain degree c has weight -c, so [1] raises weight by one
// and the stupid truncations are the weight truncations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hecat/errors.hpp"
#include "hecat/soergel.hpp"

namespace hecat {

/// Models of the indecomposables B_x together with cached decompositions and
/// Hom spaces between them.
template <class F>
class SoergelCategory {
 public:
  /// A summand of some bimodule, identified with model(element)<shift>.
  struct Piece {
    int element = 0;
    int shift = 0;
    PolyMatrix<F> inclusion;   // model -> whole
    PolyMatrix<F> projection;  // whole -> model
  };

  explicit SoergelCategory(RingPtr<F> ring) : ring_(std::move(ring)) {}
  static std::shared_ptr<SoergelCategory> make(RingPtr<F> ring) {
    return std::make_shared<SoergelCategory>(std::move(ring));
  }
  static std::shared_ptr<SoergelCategory> make(CoxeterSystem<F> sys) { return make(PolyRing<F>::make(std::move(sys))); }

  const RingPtr<F>& ring() const { return ring_; }
  const CoxeterGroup& group() const { return ring_->group(); }

  const Bimodule<F>& model(int x) {
    auto it = models_.find(x);
    if (it != models_.end()) return it->second;
    const CoxeterGroup& g = group();
    Bimodule<F> m;
    if (x == g.identity()) {
      m = unit_bimodule(ring_);
    } else if (g.length(x) == 1) {
      m = generator_bimodule(ring_, g.word(x)[0]);
    } else {
      bool found = false;
      for (auto& p : split_summands(bott_samelson(ring_, g.word(x))))
        if (p.element == x && p.shift == 0) {
          m = std::move(p.image);
          found = true;
          break;
        }
      if (!found) throw InvalidObject("no copy of B_" + g.element_string(x) + " in its Bott-Samelson bimodule");
    }
    return models_.emplace(x, std::move(m)).first->second;
  }

  /// Degree-d maps model(x) -> model(y).
  const HomSpace<F>& hom(int x, int y, int d) {
    auto key = std::make_tuple(x, y, d);
    auto it = homs_.find(key);
    if (it != homs_.end()) return it->second;
    HomSpace<F> h = hom_space(model(x), model(y), d);
    return homs_.emplace(key, std::move(h)).first->second;
  }

  /// Splits b into pieces, each with an inclusion from and projection to the
  /// model, normalized so that projection * inclusion = id.
  std::vector<Piece> pieces(const Bimodule<F>& b) {
    std::vector<Piece> out;
    for (const auto& p : split_summands(b)) {
      const Bimodule<F> target = model(p.element).shifted(p.shift);
      HomSpace<F> to = hom_space(p.image, target, 0), from = hom_space(target, p.image, 0);
      if (to.dim() != 1 || from.dim() != 1) throw InvalidObject("summand is not isomorphic to its model");
      const F c = (from.maps[0] * to.maps[0])(0, 0).constant_term();
      out.push_back({p.element, p.shift, p.inclusion * from.maps[0].scaled(F(1) / c), to.maps[0] * p.projection});
    }
    return out;
  }

  /// Pieces of model(x) (x) model(y).
  const std::vector<Piece>& tensor_pieces(int x, int y) {
    auto key = std::make_pair(x, y);
    auto it = tensor_.find(key);
    if (it != tensor_.end()) return it->second;
    std::vector<Piece> out;
    const int e = group().identity();
    if (x == e || y == e) {
      const int z = x == e ? y : x;
      const std::size_t n = model(z).rank();
      out.push_back({z, 0, PolyMatrix<F>::identity(n), PolyMatrix<F>::identity(n)});
    } else {
      out = pieces(tensor_bimod(model(x), model(y)));
    }
    return tensor_.emplace(key, std::move(out)).first->second;
  }

 private:
  RingPtr<F> ring_;
  std::map<int, Bimodule<F>> models_;
  std::map<std::tuple<int, int, int>, HomSpace<F>> homs_;
  std::map<std::pair<int, int>, std::vector<Piece>> tensor_;
};

template <class F>
using CategoryPtr = std::shared_ptr<SoergelCategory<F>>;

/// A summand of a chain group. `tag` carries a weight when the complex is
/// filtered (see weight_complex); it is ignored otherwise.
template <class F>
struct Summand {
  Bimodule<F> object;
  int element = -1;
  int shift = 0;
  int tag = 0;

  bool labeled() const { return element >= 0; }
};

template <class F>
Summand<F> labeled_summand(const CategoryPtr<F>& cat, int x, int shift = 0, int tag = 0) {
  return {cat->model(x).shifted(shift), x, shift, tag};
}

template <class F>
class BimoduleComplex {
 public:
  using Key = std::pair<std::size_t, std::size_t>;  // (target, source)
  using Block = std::map<Key, PolyMatrix<F>>;

  BimoduleComplex() = default;
  explicit BimoduleComplex(CategoryPtr<F> cat) : cat_(std::move(cat)) {}

  const CategoryPtr<F>& category() const { return cat_; }
  const RingPtr<F>& ring() const { return cat_->ring(); }

  const std::map<int, std::vector<Summand<F>>>& terms() const { return terms_; }
  const std::vector<Summand<F>>& term(int i) const {
    static const std::vector<Summand<F>> kEmpty;
    auto it = terms_.find(i);
    return it == terms_.end() ? kEmpty : it->second;
  }
  std::vector<Summand<F>>& term_mut(int i) { return terms_[i]; }

  std::size_t add(int i, Summand<F> s) {
    if (s.object.ring() != ring()) throw RingMismatch("summand lives over a different ring");
    auto& t = terms_[i];
    t.push_back(std::move(s));
    return t.size() - 1;
  }

  /// Sets d_i(q, p); a zero matrix clears the component.
  void set(int i, std::size_t q, std::size_t p, PolyMatrix<F> f) {
    if (f.is_zero()) {
      auto it = d_.find(i);
      if (it != d_.end()) it->second.erase({q, p});
      return;
    }
    d_[i][{q, p}] = std::move(f);
  }
  void add_to(int i, std::size_t q, std::size_t p, const PolyMatrix<F>& f) {
    auto& block = d_[i];
    auto it = block.find({q, p});
    if (it == block.end()) {
      if (!f.is_zero()) block.emplace(Key{q, p}, f);
      return;
    }
    it->second = it->second + f;
    if (it->second.is_zero()) block.erase(it);
  }

  const Block& differential(int i) const {
    static const Block kEmpty;
    auto it = d_.find(i);
    return it == d_.end() ? kEmpty : it->second;
  }
  PolyMatrix<F> component(int i, std::size_t q, std::size_t p) const {
    const Block& b = differential(i);
    auto it = b.find({q, p});
    if (it != b.end()) return it->second;
    return PolyMatrix<F>(term(i + 1).at(q).object.rank(), term(i).at(p).object.rank());
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [i, t] : terms_) n += t.size();
    return n;
  }
  bool is_zero() const { return size() == 0; }
  bool all_labeled() const {
    for (const auto& [i, t] : terms_)
      for (const auto& s : t)
        if (!s.labeled()) return false;
    return true;
  }
  /// Lowest and highest chain degree carrying a summand.
  std::optional<std::pair<int, int>> degree_range() const {
    std::optional<std::pair<int, int>> r;
    for (const auto& [i, t] : terms_) {
      if (t.empty()) continue;
      if (!r) r = std::make_pair(i, i);
      r->first = std::min(r->first, i);
      r->second = std::max(r->second, i);
    }
    return r;
  }

  /// Euler characteristic sum_i (-1)^i [C^i] in the Hecke algebra.
  HeckeElement k_class() const {
    HeckeElement out(ring()->group_ptr());
    for (const auto& [i, t] : terms_)
      for (const auto& s : t) {
        if (i % 2) out -= s.object.character();
        else out += s.object.character();
      }
    return out;
  }

  /// Degree-0 bimodule maps and d^2 = 0; throws InvalidObject.
  void validate() const {
    for (const auto& [i, block] : d_)
      for (const auto& [key, f] : block) {
        const auto& src = term(i).at(key.second).object;
        const auto& dst = term(i + 1).at(key.first).object;
        if (f.rows() != dst.rank() || f.cols() != src.rank()) throw InvalidObject("differential has the wrong shape");
        for (std::size_t k = 0; k < f.rows(); ++k)
          for (std::size_t a = 0; a < f.cols(); ++a) {
            const int e = src.degree(a) - dst.degree(k);
            if (!f(k, a).is_zero() && (e < 0 || e % 2 || !f(k, a).is_homogeneous(e / 2)))
              throw InvalidObject("differential is not of degree 0");
          }
        if (!is_bimodule_map(src, dst, f)) throw InvalidObject("differential is not a bimodule map");
      }
    for (const auto& [i, block] : d_) {
      std::map<Key, PolyMatrix<F>> sq;
      for (const auto& [k2, g] : differential(i + 1))
        for (const auto& [k1, f] : block) {
          if (k2.second != k1.first) continue;
          Key k{k2.first, k1.second};
          auto it = sq.find(k);
          if (it == sq.end()) sq.emplace(k, g * f);
          else it->second = it->second + g * f;
        }
      for (const auto& [k, m] : sq)
        if (!m.is_zero()) throw InvalidObject("d^2 != 0 in chain degree " + std::to_string(i));
    }
  }

  void drop_empty_terms() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.empty()) it = terms_.erase(it);
      else ++it;
    }
    for (auto it = d_.begin(); it != d_.end();) {
      if (it->second.empty()) it = d_.erase(it);
      else ++it;
    }
  }

 private:
  CategoryPtr<F> cat_;
  std::map<int, std::vector<Summand<F>>> terms_;
  std::map<int, Block> d_;
};

/// A chain map C -> D, components keyed by (degree, target summand, source summand).
template <class F>
struct ChainMap {
  std::map<std::tuple<int, std::size_t, std::size_t>, PolyMatrix<F>> components;
};

// ---------------------------------------------------------------------------
// Basic constructions.

template <class F>
BimoduleComplex<F> unit_complex(const CategoryPtr<F>& cat) {
  BimoduleComplex<F> c(cat);
  c.add(0, labeled_summand(cat, cat->group().identity()));
  return c;
}

/// B_x<shift> in a single chain degree.
template <class F>
BimoduleComplex<F> one_term_complex(const CategoryPtr<F>& cat, int x, int shift = 0, int degree = 0) {
  BimoduleComplex<F> c(cat);
  c.add(degree, labeled_summand(cat, x, shift, -degree));
  return c;
}

/// A raw bimodule in a single chain degree.
template <class F>
BimoduleComplex<F> bimodule_complex(const CategoryPtr<F>& cat, const Bimodule<F>& b, int degree = 0) {
  BimoduleComplex<F> c(cat);
  c.add(degree, {b, -1, 0, -degree});
  return c;
}

/// F_s = [B_s -> R<1>] with B_s in degree 0, F_s^-1 = [R<-1> -> B_s].
template <class F>
BimoduleComplex<F> elementary_complex(const CategoryPtr<F>& cat, const BraidLetter& l) {
  const CoxeterGroup& g = cat->group();
  g.check_generator(l.gen);
  const int s = g.generator(l.gen), e = g.identity();
  BimoduleComplex<F> c(cat);
  if (!l.inverse) {
    c.add(0, labeled_summand(cat, s, 0, 0));
    c.add(1, labeled_summand(cat, e, 1, -1));
    const HomSpace<F>& h = cat->hom(s, e, 1);
    if (h.dim() != 1) throw InvalidObject("expected a unique counit map B_s -> R<1>");
    c.set(0, 0, 0, h.maps[0]);
  } else {
    c.add(-1, labeled_summand(cat, e, -1, 1));
    c.add(0, labeled_summand(cat, s, 0, 0));
    const HomSpace<F>& h = cat->hom(e, s, 1);
    if (h.dim() != 1) throw InvalidObject("expected a unique unit map R<-1> -> B_s");
    c.set(-1, 0, 0, h.maps[0]);
  }
  return c;
}

/// C[n]: (C[n])^i = C^{i+n}, differential times (-1)^n.
template <class F>
BimoduleComplex<F> shift_chain(const BimoduleComplex<F>& c, int n) {
  BimoduleComplex<F> out(c.category());
  for (const auto& [i, t] : c.terms())
    for (const auto& s : t) out.add(i - n, s);
  for (const auto& [i, t] : c.terms())
    for (const auto& [k, f] : c.differential(i)) out.set(i - n, k.first, k.second, n % 2 ? f.scaled(F(-1)) : f);
  return out;
}

/// Internal grading shift <k> of every term.
template <class F>
BimoduleComplex<F> shift_internal(const BimoduleComplex<F>& c, int k) {
  BimoduleComplex<F> out(c.category());
  for (const auto& [i, t] : c.terms())
    for (const auto& s : t) out.add(i, {s.object.shifted(k), s.element, s.shift + k, s.tag});
  for (const auto& [i, t] : c.terms())
    for (const auto& [key, f] : c.differential(i)) out.set(i, key.first, key.second, f);
  return out;
}

template <class F>
BimoduleComplex<F> direct_sum(const BimoduleComplex<F>& a, const BimoduleComplex<F>& b) {
  if (a.ring() != b.ring()) throw RingMismatch("complexes live over different rings");
  BimoduleComplex<F> out = a;
  std::map<int, std::size_t> offset;
  for (const auto& [i, t] : b.terms()) {
    offset[i] = a.term(i).size();
    for (const auto& s : t) out.add(i, s);
  }
  for (const auto& [i, t] : b.terms())
    for (const auto& [k, f] : b.differential(i))
      out.set(i, offset[i + 1] + k.first, offset[i] + k.second, f);
  return out;
}

namespace detail {

/// f (x) id_Q for f : P -> P'.
template <class F>
PolyMatrix<F> tensor_left(const PolyMatrix<F>& f, std::size_t nq) {
  PolyMatrix<F> out(f.rows() * nq, f.cols() * nq);
  for (std::size_t k = 0; k < f.rows(); ++k)
    for (std::size_t i = 0; i < f.cols(); ++i) {
      if (f(k, i).is_zero()) continue;
      for (std::size_t l = 0; l < nq; ++l) out(k * nq + l, i * nq + l) = f(k, i);
    }
  return out;
}

/// id_P (x) g for g : Q -> Q'. Coefficients of g move across the tensor sign
/// and act on P from the right.
template <class F>
PolyMatrix<F> tensor_right(const Bimodule<F>& p, const PolyMatrix<F>& g) {
  const std::size_t np = p.rank();
  PolyMatrix<F> out(np * g.rows(), np * g.cols());
  for (std::size_t m = 0; m < g.rows(); ++m)
    for (std::size_t l = 0; l < g.cols(); ++l) {
      if (g(m, l).is_zero()) continue;
      const PolyMatrix<F> a = p.act_matrix(g(m, l));
      for (std::size_t k = 0; k < np; ++k)
        for (std::size_t i = 0; i < np; ++i)
          if (!a(k, i).is_zero()) out(k * g.rows() + m, i * g.cols() + l) = a(k, i);
    }
  return out;
}

template <class F>
struct Placed {
  std::size_t index;
  PolyMatrix<F> inclusion, projection;
};

}  // namespace detail

/// Total complex of the termwise tensor product, d = d_C (x) 1 + (-1)^i 1 (x) d_D.
/// Products of labelled summands are split into labelled pieces right away.
template <class F>
BimoduleComplex<F> tensor_complex(const BimoduleComplex<F>& c, const BimoduleComplex<F>& d) {
  if (c.ring() != d.ring()) throw RingMismatch("complexes live over different rings");
  const CategoryPtr<F>& cat = c.category();
  BimoduleComplex<F> out(cat);
  using BlockKey = std::tuple<int, std::size_t, int, std::size_t>;
  std::map<BlockKey, std::vector<detail::Placed<F>>> placed;
  for (const auto& [i, tc] : c.terms())
    for (std::size_t p = 0; p < tc.size(); ++p)
      for (const auto& [j, td] : d.terms())
        for (std::size_t r = 0; r < td.size(); ++r) {
          const Summand<F>& x = tc[p];
          const Summand<F>& y = td[r];
          auto& slots = placed[{i, p, j, r}];
          const int tag = x.tag + y.tag;
          if (x.labeled() && y.labeled()) {
            for (const auto& pc : cat->tensor_pieces(x.element, y.element)) {
              const int k = pc.shift + x.shift + y.shift;
              std::size_t idx = out.add(i + j, labeled_summand(cat, pc.element, k, tag));
              slots.push_back({idx, pc.inclusion, pc.projection});
            }
          } else {
            Bimodule<F> b = tensor_bimod(x.object, y.object);
            const std::size_t n = b.rank();
            std::size_t idx = out.add(i + j, {std::move(b), -1, 0, tag});
            slots.push_back({idx, PolyMatrix<F>::identity(n), PolyMatrix<F>::identity(n)});
          }
        }
  auto connect = [&](int n, const std::vector<detail::Placed<F>>& from, const std::vector<detail::Placed<F>>& to,
                     const PolyMatrix<F>& raw) {
    for (const auto& a : from)
      for (const auto& b : to) out.add_to(n, b.index, a.index, b.projection * raw * a.inclusion);
  };
  for (const auto& [key, from] : placed) {
    const auto& [i, p, j, r] = key;
    const Summand<F>& x = c.term(i)[p];
    const Summand<F>& y = d.term(j)[r];
    for (const auto& [k, f] : c.differential(i)) {
      if (k.second != p) continue;
      connect(i + j, from, placed.at({i + 1, k.first, j, r}), detail::tensor_left(f, y.object.rank()));
    }
    for (const auto& [k, g] : d.differential(j)) {
      if (k.second != r) continue;
      PolyMatrix<F> raw = detail::tensor_right(x.object, g);
      connect(i + j, from, placed.at({i, p, j + 1, k.first}), i % 2 ? raw.scaled(F(-1)) : raw);
    }
  }
  return out;
}

/// Replaces every raw summand by its labelled indecomposable pieces.
template <class F>
BimoduleComplex<F> normalize(const BimoduleComplex<F>& c) {
  if (c.all_labeled()) return c;
  const CategoryPtr<F>& cat = c.category();
  BimoduleComplex<F> out(cat);
  std::map<std::pair<int, std::size_t>, std::vector<detail::Placed<F>>> placed;
  for (const auto& [i, t] : c.terms())
    for (std::size_t p = 0; p < t.size(); ++p) {
      auto& slots = placed[{i, p}];
      const Summand<F>& s = t[p];
      if (s.labeled()) {
        const std::size_t n = s.object.rank();
        slots.push_back({out.add(i, s), PolyMatrix<F>::identity(n), PolyMatrix<F>::identity(n)});
        continue;
      }
      for (auto& pc : cat->pieces(s.object)) {
        std::size_t idx = out.add(i, labeled_summand(cat, pc.element, pc.shift, s.tag));
        slots.push_back({idx, std::move(pc.inclusion), std::move(pc.projection)});
      }
    }
  for (const auto& [i, t] : c.terms())
    for (const auto& [k, f] : c.differential(i))
      for (const auto& a : placed.at({i, k.second}))
        for (const auto& b : placed.at({i + 1, k.first})) out.add_to(i, b.index, a.index, b.projection * f * a.inclusion);
  return out;
}

namespace detail {

/// Nonzero scalar c with f = c * id, if any.
template <class F>
std::optional<F> scalar_of(const PolyMatrix<F>& f) {
  if (f.rows() != f.cols() || f.rows() == 0) return std::nullopt;
  const F c = f(0, 0).constant_term();
  if (is_zero(c) || f != PolyMatrix<F>::scalar(f.rows(), c)) return std::nullopt;
  return c;
}

/// Gaussian elimination on a labelled complex. With `respect_tags`, only
/// pairs of summands carrying the same tag are cancelled, which keeps the
/// filtration given by the tags.
template <class F>
BimoduleComplex<F> eliminate(const BimoduleComplex<F>& input, bool respect_tags) {
  BimoduleComplex<F> c = normalize(input);
  std::map<int, std::vector<bool>> alive;
  for (const auto& [i, t] : c.terms()) alive[i].assign(t.size(), true);
  std::map<int, typename BimoduleComplex<F>::Block> d;
  for (const auto& [i, t] : c.terms())
    if (!c.differential(i).empty()) d[i] = c.differential(i);

  auto find_pair = [&]() -> std::optional<std::tuple<int, std::size_t, std::size_t, F>> {
    for (const auto& [i, block] : d)
      for (const auto& [k, f] : block) {
        const Summand<F>& src = c.term(i)[k.second];
        const Summand<F>& dst = c.term(i + 1)[k.first];
        if (src.element != dst.element || src.shift != dst.shift) continue;
        if (respect_tags && src.tag != dst.tag) continue;
        if (auto s = scalar_of(f)) return std::make_tuple(i, k.first, k.second, *s);
      }
    return std::nullopt;
  };

  while (auto hit = find_pair()) {
    const auto [i, q, p, phi] = *hit;
    auto& block = d[i];
    // new d(q' <- p') = d(q' <- p') - d(q' <- p) phi^-1 d(q <- p')
    std::vector<std::pair<std::size_t, PolyMatrix<F>>> gamma, delta;
    for (const auto& [k, f] : block) {
      if (k.second == p && k.first != q) gamma.emplace_back(k.first, f);
      if (k.first == q && k.second != p) delta.emplace_back(k.second, f);
    }
    const F inv = F(1) / phi;
    for (const auto& [qq, g] : gamma)
      for (const auto& [pp, dl] : delta) {
        PolyMatrix<F> corr = (g * dl).scaled(-inv);
        auto it = block.find({qq, pp});
        if (it == block.end()) {
          if (!corr.is_zero()) block.emplace(std::make_pair(qq, pp), std::move(corr));
        } else {
          it->second = it->second + corr;
          if (it->second.is_zero()) block.erase(it);
        }
      }
    for (auto it = block.begin(); it != block.end();) {
      if (it->first.second == p || it->first.first == q) it = block.erase(it);
      else ++it;
    }
    if (d.count(i - 1)) {
      auto& prev = d[i - 1];
      for (auto it = prev.begin(); it != prev.end();) {
        if (it->first.first == p) it = prev.erase(it);
        else ++it;
      }
    }
    if (d.count(i + 1)) {
      auto& next = d[i + 1];
      for (auto it = next.begin(); it != next.end();) {
        if (it->first.second == q) it = next.erase(it);
        else ++it;
      }
    }
    alive[i][p] = false;
    alive[i + 1][q] = false;
  }

  BimoduleComplex<F> out(c.category());
  std::map<int, std::vector<std::size_t>> index;
  for (const auto& [i, t] : c.terms()) {
    auto& idx = index[i];
    idx.assign(t.size(), 0);
    for (std::size_t a = 0; a < t.size(); ++a)
      if (alive[i][a]) idx[a] = out.add(i, t[a]);
  }
  for (const auto& [i, block] : d)
    for (const auto& [k, f] : block) out.set(i, index[i + 1][k.first], index[i][k.second], f);
  out.drop_empty_terms();
  return out;
}

}  // namespace detail

/// Cancels isomorphism components between equal labelled summands until none
/// is left. The result is homotopy equivalent to the input and minimal.
template <class F>
BimoduleComplex<F> gaussian_eliminate(const BimoduleComplex<F>& c) {
  return detail::eliminate(c, false);
}

/// Rouquier complex of a braid word: the product of elementary complexes,
/// reduced after every factor.
template <class F>
BimoduleComplex<F> rouquier(const CategoryPtr<F>& cat, const BraidWord& braid) {
  if (!cat->ring()->system().is_type_a()) throw NotTypeA("Rouquier complexes need a type A system");
  BimoduleComplex<F> c = unit_complex(cat);
  for (const auto& l : braid) c = gaussian_eliminate(tensor_complex(c, elementary_complex(cat, l)));
  return c;
}

template <class F>
HeckeElement k_class(const BimoduleComplex<F>& c) {
  return c.k_class();
}

/// Multiset of labels (element, shift) per chain degree.
template <class F>
std::map<int, std::map<std::pair<int, int>, int>> label_profile(const BimoduleComplex<F>& c) {
  std::map<int, std::map<std::pair<int, int>, int>> out;
  for (const auto& [i, t] : c.terms())
    for (const auto& s : t) ++out[i][{s.element, s.shift}];
  return out;
}

namespace detail {

template <class F>
const HomSpace<F>& summand_hom(const CategoryPtr<F>& cat, const Summand<F>& a, const Summand<F>& b, int d,
                               std::map<std::tuple<const void*, const void*, int>, HomSpace<F>>& local) {
  if (a.labeled() && b.labeled()) return cat->hom(a.element, b.element, d + b.shift - a.shift);
  auto key = std::make_tuple(static_cast<const void*>(&a), static_cast<const void*>(&b), d);
  auto it = local.find(key);
  if (it == local.end()) it = local.emplace(key, hom_space(a.object, b.object, d)).first;
  return it->second;
}

}  // namespace detail

/// Decides C ~ D. Both sides are reduced to minimal complexes, which are
/// homotopy equivalent iff isomorphic. Label multisets are compared first;
/// then a random element of the space of degree-0 chain maps is tested for
/// invertibility modulo the radical. Throws SearchExhausted when the label
/// multisets agree, chain maps exist, and `tries` random draws found no
/// isomorphism.
template <class F>
bool homotopy_equal(const BimoduleComplex<F>& c, const BimoduleComplex<F>& d, std::uint64_t seed = 7, int tries = 8) {
  if (c.ring() != d.ring()) throw RingMismatch("complexes live over different rings");
  const BimoduleComplex<F> a = gaussian_eliminate(c), b = gaussian_eliminate(d);
  if (label_profile(a) != label_profile(b)) return false;
  if (a.is_zero()) return true;
  const CategoryPtr<F>& cat = a.category();

  struct Unknown {
    int i;
    std::size_t q, p, h;
  };
  std::vector<Unknown> unknowns;
  std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> first_unknown;
  for (const auto& [i, ta] : a.terms()) {
    const auto& tb = b.term(i);
    for (std::size_t q = 0; q < tb.size(); ++q)
      for (std::size_t p = 0; p < ta.size(); ++p) {
        const HomSpace<F>& h = cat->hom(ta[p].element, tb[q].element, tb[q].shift - ta[p].shift);
        first_unknown[{i, q, p}] = unknowns.size();
        for (std::size_t k = 0; k < h.dim(); ++k) unknowns.push_back({i, q, p, k});
      }
  }
  auto basis_map = [&](const Unknown& u) -> const PolyMatrix<F>& {
    const Summand<F>& x = a.term(u.i)[u.p];
    const Summand<F>& y = b.term(u.i)[u.q];
    return cat->hom(x.element, y.element, y.shift - x.shift).maps[u.h];
  };

  // d_B f^i - f^{i+1} d_A = 0, one equation per (i, target, source, entry, monomial).
  std::map<std::tuple<int, std::size_t, std::size_t, std::size_t, std::size_t, Monomial>, std::size_t> eq;
  std::vector<SparseRow<F>> rows;
  auto emit = [&](int i, std::size_t q2, std::size_t p, const PolyMatrix<F>& m, std::size_t u, const F& sign) {
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t col = 0; col < m.cols(); ++col)
        for (const auto& [mono, x] : m(r, col).terms()) {
          auto key = std::make_tuple(i, q2, p, r, col, mono);
          auto it = eq.find(key);
          if (it == eq.end()) {
            it = eq.emplace(key, rows.size()).first;
            rows.emplace_back();
          }
          rows[it->second].emplace_back(u, sign * x);
        }
  };
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const Unknown& un = unknowns[u];
    const PolyMatrix<F>& f = basis_map(un);
    for (const auto& [k, g] : b.differential(un.i))
      if (k.second == un.q) emit(un.i, k.first, un.p, g * f, u, F(1));
    for (const auto& [k, g] : a.differential(un.i - 1))
      if (k.first == un.p) emit(un.i - 1, un.q, k.second, f * g, u, F(-1));
  }
  SparseEchelon<F> ech(unknowns.size());
  for (const auto& r : rows) ech.add(r);
  const auto kernel = ech.kernel();
  if (kernel.empty()) return false;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-1000, 1000);
  const auto profile = label_profile(a);
  for (int attempt = 0; attempt < tries; ++attempt) {
    std::vector<F> x(unknowns.size(), F(0));
    for (const auto& v : kernel) {
      const F r(coef(rng));
      for (const auto& [u, y] : v) x[u] += r * y;
    }
    bool iso = true;
    for (const auto& [i, classes] : profile) {
      for (const auto& [label, count] : classes) {
        std::vector<std::size_t> pa, qb;
        for (std::size_t p = 0; p < a.term(i).size(); ++p)
          if (std::make_pair(a.term(i)[p].element, a.term(i)[p].shift) == label) pa.push_back(p);
        for (std::size_t q = 0; q < b.term(i).size(); ++q)
          if (std::make_pair(b.term(i)[q].element, b.term(i)[q].shift) == label) qb.push_back(q);
        Matrix<F> s(qb.size(), pa.size());
        for (std::size_t r = 0; r < qb.size(); ++r)
          for (std::size_t col = 0; col < pa.size(); ++col) {
            const std::size_t base = first_unknown.at({i, qb[r], pa[col]});
            const HomSpace<F>& h = cat->hom(label.first, label.first, 0);
            for (std::size_t k = 0; k < h.dim(); ++k) s(r, col) += x[base + k] * h.maps[k](0, 0).constant_term();
          }
        if (rank(s) != pa.size()) iso = false;
        if (!iso) break;
      }
      if (!iso) break;
    }
    if (iso) return true;
  }
  throw SearchExhausted("no invertible chain map found in " + std::to_string(tries) + " random draws");
}

// ---------------------------------------------------------------------------
// Hom complexes.

/// dim H^n of the degree-d part of Hom(X, Y): chains of degree n are families
/// f_i : X^i -> Y^{i+n}, and D f = d_Y f - (-1)^n f d_X.
template <class F>
std::size_t hom_cohomology_dim(const BimoduleComplex<F>& x, const BimoduleComplex<F>& y, int n, int d) {
  if (x.ring() != y.ring()) throw RingMismatch("complexes live over different rings");
  const CategoryPtr<F>& cat = x.category();
  std::map<std::tuple<const void*, const void*, int>, HomSpace<F>> local;

  struct Block {
    int i;
    std::size_t q, p;
    const HomSpace<F>* h;
    std::size_t offset;
  };
  auto layout = [&](int m, std::size_t& total) {
    std::vector<Block> out;
    total = 0;
    for (const auto& [i, tx] : x.terms()) {
      const auto& ty = y.term(i + m);
      for (std::size_t q = 0; q < ty.size(); ++q)
        for (std::size_t p = 0; p < tx.size(); ++p) {
          const HomSpace<F>& h = detail::summand_hom(cat, tx[p], ty[q], d, local);
          if (h.dim() == 0) continue;
          out.push_back({i, q, p, &h, total});
          total += h.dim();
        }
    }
    return out;
  };
  // Rank of D^m : Hom^m -> Hom^{m+1}.
  auto rank_of = [&](int m) -> std::size_t {
    std::size_t ns = 0, nt = 0;
    const auto src = layout(m, ns);
    const auto dst = layout(m + 1, nt);
    if (ns == 0 || nt == 0) return 0;
    std::map<std::tuple<int, std::size_t, std::size_t>, const Block*> where;
    for (const auto& blk : dst) where[{blk.i, blk.q, blk.p}] = &blk;
    SparseEchelon<F> ech(nt);
    const F sign = m % 2 ? F(1) : F(-1);
    for (const auto& blk : src)
      for (std::size_t k = 0; k < blk.h->dim(); ++k) {
        const PolyMatrix<F>& f = blk.h->maps[k];
        std::map<std::size_t, F> col;
        auto put = [&](int i, std::size_t q, std::size_t p, const PolyMatrix<F>& g, const F& c) {
          auto it = where.find({i, q, p});
          if (it == where.end()) return;  // Hom space is zero there
          const auto coords = it->second->h->coordinates(g);
          for (std::size_t r = 0; r < coords.size(); ++r)
            if (!is_zero(coords[r])) col[it->second->offset + r] += c * coords[r];
        };
        for (const auto& [key, g] : y.differential(blk.i + m))
          if (key.second == blk.q) put(blk.i, key.first, blk.p, g * f, F(1));
        for (const auto& [key, g] : x.differential(blk.i - 1))
          if (key.first == blk.p) put(blk.i - 1, blk.q, key.second, f * g, sign);
        SparseRow<F> row;
        for (auto& [r, v] : col)
          if (!is_zero(v)) row.emplace_back(r, v);
        ech.add(row);
      }
    return ech.rank();
  };
  std::size_t dim = 0;
  layout(n, dim);
  return dim - rank_of(n) - rank_of(n - 1);
}

// ---------------------------------------------------------------------------
// Cones and truncations.

/// cone(f)^i = C^{i+1} (+) D^i with differential [[-d_C, 0], [f, d_D]].
template <class F>
BimoduleComplex<F> cone(const BimoduleComplex<F>& c, const BimoduleComplex<F>& d, const ChainMap<F>& f) {
  if (c.ring() != d.ring()) throw RingMismatch("complexes live over different rings");
  BimoduleComplex<F> out(c.category());
  std::set<int> degrees;
  for (const auto& [i, t] : c.terms()) degrees.insert(i - 1);
  for (const auto& [i, t] : d.terms()) degrees.insert(i);
  for (int i : degrees) {
    for (const auto& s : c.term(i + 1)) out.add(i, s);
    for (const auto& s : d.term(i)) out.add(i, s);
  }
  for (int i : degrees) {
    const std::size_t here = c.term(i + 1).size(), next = c.term(i + 2).size();
    for (const auto& [k, g] : c.differential(i + 1)) out.set(i, k.first, k.second, g.scaled(F(-1)));
    for (const auto& [k, g] : d.differential(i)) out.set(i, next + k.first, here + k.second, g);
  }
  for (const auto& [key, g] : f.components) {
    const auto& [i, q, p] = key;
    // f^i : C^i -> D^i is the component from C^i (inside cone^{i-1}) to D^i (inside cone^i)
    out.add_to(i - 1, c.term(i + 1).size() + q, p, g);
  }
  return out;
}

template <class F>
ChainMap<F> identity_map(const BimoduleComplex<F>& c) {
  ChainMap<F> f;
  for (const auto& [i, t] : c.terms())
    for (std::size_t p = 0; p < t.size(); ++p) f.components[{i, p, p}] = PolyMatrix<F>::identity(t[p].object.rank());
  return f;
}

template <class F>
bool is_chain_map(const BimoduleComplex<F>& c, const BimoduleComplex<F>& d, const ChainMap<F>& f) {
  std::map<std::tuple<int, std::size_t, std::size_t>, PolyMatrix<F>> diff;
  auto acc = [&](int i, std::size_t q, std::size_t p, const PolyMatrix<F>& m) {
    auto key = std::make_tuple(i, q, p);
    auto it = diff.find(key);
    if (it == diff.end()) diff.emplace(key, m);
    else it->second = it->second + m;
  };
  for (const auto& [key, g] : f.components) {
    const auto& [i, q, p] = key;
    for (const auto& [k, h] : d.differential(i))
      if (k.second == q) acc(i, k.first, p, h * g);
    for (const auto& [k, h] : c.differential(i - 1))
      if (k.first == p) acc(i - 1, q, k.second, (g * h).scaled(F(-1)));
  }
  return std::all_of(diff.begin(), diff.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

/// Stupid truncation at weight n: `low` keeps chain degrees >= -n (a
/// subcomplex, weight <= n), `high` keeps degrees < -n (the quotient).
template <class F>
std::pair<BimoduleComplex<F>, BimoduleComplex<F>> stupid_truncate(const BimoduleComplex<F>& c, int n) {
  BimoduleComplex<F> low(c.category()), high(c.category());
  for (const auto& [i, t] : c.terms()) {
    BimoduleComplex<F>& part = i >= -n ? low : high;
    for (const auto& s : t) part.add(i, s);
  }
  for (const auto& [i, t] : c.terms()) {
    if (i + 1 < -n) {
      for (const auto& [k, f] : c.differential(i)) high.set(i, k.first, k.second, f);
    } else if (i >= -n) {
      for (const auto& [k, f] : c.differential(i)) low.set(i, k.first, k.second, f);
    }
  }
  return {low, high};
}

/// Inclusion of the `low` part of a stupid truncation.
template <class F>
ChainMap<F> truncation_inclusion(const BimoduleComplex<F>& low) {
  return identity_map(low);
}

/// Weight range [lo, hi] of the minimal form; nullopt for contractible complexes.
template <class F>
std::optional<std::pair<int, int>> weight_range(const BimoduleComplex<F>& c) {
  auto r = gaussian_eliminate(c).degree_range();
  if (!r) return std::nullopt;
  return std::make_pair(-r->second, -r->first);
}

template <class F>
bool in_weight_le(const BimoduleComplex<F>& c, int n) {
  auto r = weight_range(c);
  return !r || r->second <= n;
}

template <class F>
bool in_weight_ge(const BimoduleComplex<F>& c, int n) {
  auto r = weight_range(c);
  return !r || r->first >= n;
}

/// The weight complex of a filtered complex. The filtration is given by the
/// summand tags: F_n consists of the summands with tag <= n and must be a
/// subcomplex. Cancelling isomorphisms inside each graded piece keeps the
/// filtration; afterwards assgr_w must sit in chain degree -w, and the
/// remaining complex, whose differential is made of the connecting maps, is
/// the weight complex. Throws InvalidObject for a non-filtration and
/// ImpureQuotient for an impure graded piece.
template <class F>
BimoduleComplex<F> weight_complex(const BimoduleComplex<F>& c) {
  for (const auto& [i, t] : c.terms())
    for (const auto& [k, f] : c.differential(i))
      if (c.term(i + 1)[k.first].tag > t[k.second].tag)
        throw InvalidObject("tags do not define a filtration by subcomplexes");
  BimoduleComplex<F> r = detail::eliminate(c, true);
  for (const auto& [i, t] : r.terms())
    for (const auto& s : t)
      if (s.tag != -i)
        throw ImpureQuotient("graded piece of weight " + std::to_string(s.tag) + " has a term in chain degree " +
                             std::to_string(i));
  return r;
}

/// Tags every summand with its stupid weight -degree.
template <class F>
BimoduleComplex<F> with_stupid_filtration(BimoduleComplex<F> c) {
  for (const auto& [i, t] : c.terms())
    for (auto& s : c.term_mut(i)) s.tag = -i;
  return c;
}

// ---------------------------------------------------------------------------
// The weight structure axioms on samples.

struct WeightCheck {
  std::string axiom;
  std::string subject;
  bool passed = false;
};

struct WeightReport {
  std::vector<WeightCheck> checks;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.passed; }));
  }
  bool all_passed() const { return failures() == 0; }
};

/// [Z -> Z] with the identity, starting in chain degree i: contractible.
template <class F>
BimoduleComplex<F> contractible_pair(const CategoryPtr<F>& cat, int x, int shift, int i) {
  BimoduleComplex<F> c(cat);
  c.add(i, labeled_summand(cat, x, shift, -i));
  c.add(i + 1, labeled_summand(cat, x, shift, -i - 1));
  c.set(i, 0, 0, PolyMatrix<F>::identity(cat->model(x).rank()));
  return c;
}

/// Checks on a sample: (i) shift closure of w<=0 and w>=0, including a
/// negative control; (ii) vanishing of homotopy classes of degree-0 maps from
/// weight <= 0 to weight >= 1, with contractible junk added so the Hom complexes
/// are not trivially zero; (iii) stupid truncations give triangles
/// low -> C -> high with high ~ cone(low -> C).
template <class F>
WeightReport weight_axiom_suite(const std::vector<BimoduleComplex<F>>& sample, const std::vector<int>& internal_degrees = {-1, 0, 1}) {
  WeightReport report;
  for (std::size_t idx = 0; idx < sample.size(); ++idx) {
    const BimoduleComplex<F>& c = sample[idx];
    const std::string name = "sample " + std::to_string(idx);
    const CategoryPtr<F>& cat = c.category();
    auto range = weight_range(c);
    const int lo = range ? range->first : 0, hi = range ? range->second : 0;

    // (i)
    report.checks.push_back({"shift", name + ": C in w<=" + std::to_string(hi) + " and w>=" + std::to_string(lo),
                             in_weight_le(c, hi) && in_weight_ge(c, lo)});
    report.checks.push_back({"shift", name + ": C[-1] in w<=" + std::to_string(hi), in_weight_le(shift_chain(c, -1), hi)});
    report.checks.push_back({"shift", name + ": C[1] in w>=" + std::to_string(lo), in_weight_ge(shift_chain(c, 1), lo)});
    report.checks.push_back({"shift", name + ": C[1] in w>=" + std::to_string(lo + 1) + " and w<=" + std::to_string(hi + 1),
                             in_weight_ge(shift_chain(c, 1), lo + 1) && in_weight_le(shift_chain(c, 1), hi + 1)});
    if (range)
      report.checks.push_back({"shift", name + ": negative control, C[1] outside w<=" + std::to_string(hi),
                               !in_weight_le(shift_chain(c, 1), hi)});

    // (iii)
    for (int n = lo - 1; n <= hi; ++n) {
      auto [low, high] = stupid_truncate(c, n);
      const bool ok = in_weight_le(low, n) && in_weight_ge(high, n + 1) &&
                      is_chain_map(low, c, truncation_inclusion(low)) &&
                      homotopy_equal(cone(low, c, truncation_inclusion(low)), high);
      report.checks.push_back({"triangle", name + ": n=" + std::to_string(n), ok});
    }

    // (ii): the truncation pieces of this sample against each other and
    // against the pieces of the next sample.
    const BimoduleComplex<F>& other = sample[(idx + 1) % sample.size()];
    for (int n = lo - 1; n <= hi; ++n) {
      BimoduleComplex<F> left = stupid_truncate(c, n).first;
      BimoduleComplex<F> right = stupid_truncate(other, n).second;
      // weights of `left` <= n, weights of `right` >= n + 1
      const int e = cat->group().identity();
      left = direct_sum(left, contractible_pair(cat, e, 0, -n - 1));
      right = direct_sum(right, contractible_pair(cat, e, 0, -n - 1));
      bool ok = true;
      for (int d : internal_degrees) ok = ok && hom_cohomology_dim(left, right, 0, d) == 0;
      report.checks.push_back({"hom-vanishing", name + " vs sample " + std::to_string((idx + 1) % sample.size()) +
                                                    ": n=" + std::to_string(n),
                               ok});
    }
  }
  return report;
}

}  // namespace hecat
