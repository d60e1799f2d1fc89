#pragma once

// Finite Coxeter systems. The combinatorics (words, lengths, products,
// Bruhat order) live in a field-independent CoxeterGroup; CoxeterSystem<F>
// adds an exact realization over the field F.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hecat/errors.hpp"
#include "hecat/linalg.hpp"
#include "hecat/rational.hpp"

namespace hecat {

using Word = std::vector<int>;

/// A signed generator of a braid group: +s or -s.
struct BraidLetter {
  int gen = 0;
  bool inverse = false;
  bool operator==(const BraidLetter&) const = default;
};
using BraidWord = std::vector<BraidLetter>;

class CoxeterGroup {
 public:
  static constexpr std::size_t kDefaultBound = 5040;

  std::size_t rank() const { return names_.size(); }
  std::size_t size() const { return words_.size(); }
  const std::string& name() const { return name_; }
  const std::vector<std::vector<int>>& coxeter_matrix() const { return m_; }

  int identity() const { return 0; }
  int generator(int s) const { return right_[0][static_cast<std::size_t>(s)]; }
  const Word& word(int w) const { return words_[static_cast<std::size_t>(w)]; }
  int length(int w) const { return static_cast<int>(words_[static_cast<std::size_t>(w)].size()); }
  int longest() const { return static_cast<int>(size()) - 1; }

  int right_mult(int w, int s) const { return right_[static_cast<std::size_t>(w)][static_cast<std::size_t>(s)]; }
  int left_mult(int s, int w) const { return left_[static_cast<std::size_t>(w)][static_cast<std::size_t>(s)]; }

  int multiply(int a, int b) const {
    for (int s : word(b)) a = right_mult(a, s);
    return a;
  }
  int inverse(int w) const { return inverse_[static_cast<std::size_t>(w)]; }
  int element(const Word& word) const {
    int w = identity();
    for (int s : word) {
      check_generator(s);
      w = right_mult(w, s);
    }
    return w;
  }

  bool is_right_descent(int w, int s) const { return length(right_mult(w, s)) < length(w); }
  bool is_left_descent(int s, int w) const { return length(left_mult(s, w)) < length(w); }
  std::vector<int> right_descents(int w) const {
    std::vector<int> out;
    for (int s = 0; s < static_cast<int>(rank()); ++s)
      if (is_right_descent(w, s)) out.push_back(s);
    return out;
  }
  std::vector<int> left_descents(int w) const {
    std::vector<int> out;
    for (int s = 0; s < static_cast<int>(rank()); ++s)
      if (is_left_descent(s, w)) out.push_back(s);
    return out;
  }

  /// Bruhat order via the lifting property: for a right descent s of w,
  /// x <= w iff (xs <= ws when xs < x) and (x <= ws otherwise).
  bool bruhat_leq(int x, int w) const {
    while (true) {
      if (length(x) > length(w)) return false;
      if (x == w) return true;
      if (w == identity()) return x == identity();
      const int s = words_[static_cast<std::size_t>(w)].back();
      const int ws = right_mult(w, s);
      if (is_right_descent(x, s)) x = right_mult(x, s);
      w = ws;
    }
  }

  /// Elements sorted by (length, lexicographic word).
  std::vector<int> enumerate() const {
    std::vector<int> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
    return out;
  }

  // Generator naming: s1..sn, with s, t, u as aliases when the rank is at most 3.
  const std::vector<std::string>& generator_names() const { return names_; }
  std::string generator_name(int s) const { return names_.at(static_cast<std::size_t>(s)); }
  std::string alias(int s) const {
    static const char* kAlias[] = {"s", "t", "u"};
    return rank() <= 3 ? kAlias[s] : names_.at(static_cast<std::size_t>(s));
  }

  int parse_generator(const std::string& tok) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (tok == names_[i]) return static_cast<int>(i);
    if (rank() <= 3 && tok.size() == 1) {
      static const std::string kAlias = "stu";
      auto p = kAlias.find(tok[0]);
      if (p != std::string::npos && p < rank()) return static_cast<int>(p);
    }
    throw UnknownGenerator("unknown generator '" + tok + "' for " + name_);
  }

  /// Whitespace-separated generator names; a token made only of the
  /// single-letter aliases ("sts") expands letter by letter; "e" is empty.
  Word parse_word(const std::string& text) const {
    Word out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      if (tok == "e") continue;
      for (int s : parse_token(tok)) out.push_back(s);
    }
    return out;
  }

  /// Like parse_word, but a leading '-' marks an inverse generator.
  BraidWord parse_braid(const std::string& text) const {
    BraidWord out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
      bool inv = false;
      if (tok[0] == '-') {
        inv = true;
        tok = tok.substr(1);
      } else if (tok[0] == '+') {
        tok = tok.substr(1);
      }
      if (tok.empty()) throw UnknownGenerator("empty braid letter");
      auto gens = parse_token(tok);
      if (inv && gens.size() != 1) throw UnknownGenerator("'-' applies to a single generator: " + tok);
      for (int s : gens) out.push_back({s, inv});
    }
    return out;
  }

  std::string word_string(const Word& w) const {
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (rank() > 3 && i) out += ' ';
      out += alias(w[i]);
    }
    return out;
  }
  std::string element_string(int w) const { return word_string(word(w)); }

  std::string braid_string(const BraidWord& b) const {
    std::string out;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out += ' ';
      out += (b[i].inverse ? "-" : "") + alias(b[i].gen);
    }
    return out;
  }

  void check_generator(int s) const {
    if (s < 0 || s >= static_cast<int>(rank())) throw UnknownGenerator("generator index out of range");
  }

  // Construction from a list of generator matrices (any faithful action),
  // keyed by a canonical string of the matrix entries.
  template <class F>
  static std::shared_ptr<CoxeterGroup> from_matrices(std::string name, std::vector<std::vector<int>> m,
                                                     const std::vector<Matrix<F>>& gens,
                                                     std::vector<Matrix<F>>* element_matrices,
                                                     std::size_t bound = kDefaultBound) {
    auto g = std::shared_ptr<CoxeterGroup>(new CoxeterGroup());
    g->name_ = std::move(name);
    g->m_ = std::move(m);
    const std::size_t n = gens.size();
    for (std::size_t i = 0; i < n; ++i) g->names_.push_back("s" + std::to_string(i + 1));
    auto key = [](const Matrix<F>& x) {
      std::string k;
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) k += to_string(x(i, j)) + ',';
      return k;
    };
    const std::size_t dim = gens.empty() ? 0 : gens[0].rows();
    std::vector<Matrix<F>> mats{Matrix<F>::identity(dim)};
    std::unordered_map<std::string, int> index{{key(mats[0]), 0}};
    g->words_.push_back({});
    g->right_.push_back(std::vector<int>(n, -1));
    // Breadth-first closure: elements of length k-1 in lexicographic order,
    // each extended by generators in increasing order, so the first word to
    // reach an element is its lexicographically least reduced word.
    std::size_t layer_begin = 0, layer_end = 1;
    while (layer_begin < layer_end) {
      for (std::size_t w = layer_begin; w < layer_end; ++w)
        for (std::size_t s = 0; s < n; ++s) {
          Matrix<F> prod = mats[w] * gens[s];
          std::string k = key(prod);
          auto it = index.find(k);
          int id;
          if (it == index.end()) {
            if (g->words_.size() >= bound)
              throw BoundExceeded("enumeration of " + g->name_ + " passed " + std::to_string(bound) + " elements");
            id = static_cast<int>(mats.size());
            index.emplace(std::move(k), id);
            mats.push_back(std::move(prod));
            Word word = g->words_[w];
            word.push_back(static_cast<int>(s));
            g->words_.push_back(std::move(word));
            g->right_.push_back(std::vector<int>(n, -1));
          } else {
            id = it->second;
          }
          g->right_[w][s] = id;
        }
      layer_begin = layer_end;
      layer_end = mats.size();
    }
    g->left_.assign(mats.size(), std::vector<int>(n, -1));
    for (std::size_t w = 0; w < mats.size(); ++w)
      for (std::size_t s = 0; s < n; ++s) g->left_[w][s] = index.at(key(gens[s] * mats[w]));
    g->inverse_.resize(mats.size());
    for (std::size_t w = 0; w < mats.size(); ++w) {
      Word rev(g->words_[w].rbegin(), g->words_[w].rend());
      int x = 0;
      for (int s : rev) x = g->right_[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)];
      g->inverse_[w] = x;
    }
    if (element_matrices) *element_matrices = std::move(mats);
    return g;
  }

 private:
  CoxeterGroup() = default;

  Word parse_token(const std::string& tok) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (tok == names_[i]) return {static_cast<int>(i)};
    Word out;
    for (char ch : tok) out.push_back(parse_generator(std::string(1, ch)));
    return out;
  }

  std::string name_;
  std::vector<std::vector<int>> m_;
  std::vector<std::string> names_;
  std::vector<Word> words_;
  std::vector<std::vector<int>> right_;
  std::vector<std::vector<int>> left_;
  std::vector<int> inverse_;
};

using GroupPtr = std::shared_ptr<const CoxeterGroup>;

namespace detail {
// -4 cos^2(pi/m) for the supported orders, in the field F.
template <class F>
std::optional<F> minus_four_cos_squared(int m) {
  switch (m) {
    case 2:
      return F(0);
    case 3:
      return F(-1);
    case 4:
      return F(-2);
    case 6:
      return F(-3);
    default:
      return std::nullopt;
  }
}
template <>
inline std::optional<GoldenField> minus_four_cos_squared<GoldenField>(int m) {
  if (m == 5) return GoldenField(Rational(-3, 2), Rational(-1, 2));  // -(3+sqrt5)/2
  switch (m) {
    case 2:
      return GoldenField(0);
    case 3:
      return GoldenField(-1);
    case 4:
      return GoldenField(-2);
    case 6:
      return GoldenField(-3);
    default:
      return std::nullopt;
  }
}
}  // namespace detail

/// A Coxeter system with a realization: simple roots alpha_s and coroots
/// alpha_s^vee written in the coordinates x_1..x_N of the realization space.
/// s acts by x -> x - <alpha_s^vee, x> alpha_s.
template <class F>
class CoxeterSystem {
 public:
  using Vec = std::vector<F>;

  CoxeterSystem(std::string name, std::vector<std::vector<int>> m, std::vector<Vec> roots, std::vector<Vec> coroots,
                std::size_t bound = CoxeterGroup::kDefaultBound)
      : roots_(std::move(roots)), coroots_(std::move(coroots)) {
    const std::size_t n = roots_.size();
    nvars_ = n ? roots_[0].size() : 0;
    for (std::size_t s = 0; s < n; ++s) {
      Matrix<F> r = Matrix<F>::identity(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (std::size_t j = 0; j < nvars_; ++j) r(i, j) -= roots_[s][i] * coroots_[s][j];
      simple_.push_back(std::move(r));
    }
    group_ = CoxeterGroup::from_matrices<F>(std::move(name), std::move(m), simple_, &matrices_, bound);
  }

  /// Root realization from a Coxeter matrix: variables are the simple roots,
  /// with <alpha_s^vee, alpha_t> = -1 and <alpha_t^vee, alpha_s> = -4cos^2(pi/m)
  /// for s < t.
  static CoxeterSystem from_coxeter_matrix(const std::vector<std::vector<int>>& m, std::string name = "",
                                           std::size_t bound = CoxeterGroup::kDefaultBound) {
    const std::size_t n = m.size();
    for (const auto& row : m)
      if (row.size() != n) throw InvalidObject("Coxeter matrix must be square");
    std::vector<Vec> roots(n, Vec(n, F(0))), coroots(n, Vec(n, F(0)));
    for (std::size_t s = 0; s < n; ++s) {
      if (m[s][s] != 1) throw InvalidObject("Coxeter matrix needs 1 on the diagonal");
      roots[s][s] = F(1);
      coroots[s][s] = F(2);
      for (std::size_t t = s + 1; t < n; ++t) {
        if (m[s][t] != m[t][s] || m[s][t] < 2) throw InvalidObject("Coxeter matrix must be symmetric with entries >= 2");
        auto c = detail::minus_four_cos_squared<F>(m[s][t]);
        if (!c) throw InvalidObject("no exact realization for m = " + std::to_string(m[s][t]) + " over " +
                                    field_traits<F>::name);
        const bool commuting = m[s][t] == 2;
        coroots[s][t] = commuting ? F(0) : F(-1);
        coroots[t][s] = *c;
      }
    }
    if (name.empty()) {
      std::ostringstream os;
      os << "M[";
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) os << (i || j ? "," : "") << m[i][j];
      os << "]";
      name = os.str();
    }
    return CoxeterSystem(std::move(name), m, roots, coroots, bound);
  }

  /// Named types: "A<n>", "B2", "I2(<m>)".
  static CoxeterSystem named(const std::string& type) {
    auto fail = [&]() -> CoxeterSystem { throw InvalidObject("unsupported Coxeter type '" + type + "'"); };
    if (type.size() >= 2 && (type[0] == 'A' || type[0] == 'a') &&
        std::all_of(type.begin() + 1, type.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const int n = std::stoi(type.substr(1));
      if (n < 1 || n > 6) return fail();
      std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
      for (int i = 0; i < n; ++i) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        if (i + 1 < n) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + 1)] =
            m[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = 3;
      }
      return from_coxeter_matrix(m, "A" + std::to_string(n));
    }
    if (type == "B2" || type == "b2") return from_coxeter_matrix({{1, 4}, {4, 1}}, "B2");
    if (type.rfind("I2(", 0) == 0 && type.back() == ')') {
      const int m = std::stoi(type.substr(3, type.size() - 4));
      return from_coxeter_matrix({{1, m}, {m, 1}}, "I2(" + std::to_string(m) + ")");
    }
    return fail();
  }

  /// Type A_{n-1} acting on gl_n: variables e_1..e_n, alpha_i = e_i - e_{i+1}.
  static CoxeterSystem type_a_gl(int strands) {
    if (strands < 1) throw InvalidObject("need at least one strand");
    const std::size_t n = static_cast<std::size_t>(strands);
    std::vector<Vec> roots, coroots;
    std::vector<std::vector<int>> m(n - 1, std::vector<int>(n - 1, 2));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      Vec a(n, F(0));
      a[i] = F(1);
      a[i + 1] = F(-1);
      roots.push_back(a);
      coroots.push_back(a);
      m[i][i] = 1;
      if (i + 2 < n) m[i][i + 1] = m[i + 1][i] = 3;
    }
    CoxeterSystem sys("GL" + std::to_string(strands), m, roots, coroots);
    sys.nvars_ = n;
    if (n == 1) sys.matrices_ = {Matrix<F>::identity(1)};
    return sys;
  }

  const CoxeterGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t rank() const { return group_->rank(); }
  std::size_t num_vars() const { return nvars_; }
  const Vec& root(int s) const { return roots_.at(static_cast<std::size_t>(s)); }
  const Vec& coroot(int s) const { return coroots_.at(static_cast<std::size_t>(s)); }
  /// <alpha_s^vee, x_j>.
  const F& pairing(int s, std::size_t j) const { return coroots_.at(static_cast<std::size_t>(s))[j]; }
  F cartan(int s, int t) const {
    F r(0);
    for (std::size_t j = 0; j < nvars_; ++j) r += coroot(s)[j] * root(t)[j];
    return r;
  }
  const Matrix<F>& simple_matrix(int s) const { return simple_.at(static_cast<std::size_t>(s)); }
  /// Matrix of w on the realization space; column j is the image of x_j.
  const Matrix<F>& matrix(int w) const { return matrices_.at(static_cast<std::size_t>(w)); }

  /// True for the finite type-A systems built by named("A<n>") or type_a_gl.
  bool is_type_a() const {
    const auto& m = group_->coxeter_matrix();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) {
        int want = i == j ? 1 : (i + 1 == j || j + 1 == i) ? 3 : 2;
        if (m[i][j] != want) return false;
      }
    return true;
  }

 private:
  std::vector<Vec> roots_, coroots_;
  std::size_t nvars_ = 0;
  std::vector<Matrix<F>> simple_;
  std::vector<Matrix<F>> matrices_;
  GroupPtr group_;
};

}  // namespace hecat
