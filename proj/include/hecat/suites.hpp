#pragma once

// Randomized property suites shared by the CLI and the acceptance runner.
// Each check is recorded with the axiom it tests and the sample it ran on.

#include <map>
#include <string>
#include <vector>

#include "hecat/bigraded.hpp"
#include "hecat/complexes.hpp"
#include "hecat/sampling.hpp"

namespace hecat {

namespace detail {
inline std::string bigraded_name(const char* kind, std::size_t i) { return std::string(kind) + " " + std::to_string(i); }
}  // namespace detail

/// Weight-structure axioms for the transversal structure on bigraded
/// complexes: shift closure (with a negative control), retract closure,
/// Hom-vanishing from w<=0 to w>=1, and exact truncation triangles.
inline WeightReport bigraded_weight_suite(Rng& rng, std::size_t trials) {
  WeightReport r;
  BigradedSampleOptions le, ge;
  le.max_weight = 0;
  ge.min_weight = 1;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::string name = detail::bigraded_name("object", i);
    Bigraded v = random_bigraded(rng, le), w = random_bigraded(rng, ge), x = random_bigraded(rng, le);
    r.checks.push_back({"shift", name + ": V[-1] in w<=0", in_weight_le(shift_coh(v, -1), 0)});
    r.checks.push_back({"shift", name + ": W[1] in w>=1", in_weight_ge(shift_coh(w, 1), 1)});
    if (auto range = weight_range(v))
      r.checks.push_back({"shift", name + ": negative control, V[1] outside w<=" + std::to_string(range->second),
                          !in_weight_le(shift_coh(v, 1), range->second)});
    r.checks.push_back({"retract", name + ": V + X in w<=0", in_weight_le(direct_sum(v, x), 0)});
    r.checks.push_back({"hom-vanishing", name + ": H^0 Hom(V, W) = 0",
                        in_weight_le(v, 0) && in_weight_ge(w, 1) && cohomology_dims(hom_complex(v, w)).count({0, 0}) == 0});

    Bigraded u = random_bigraded(rng);
    const int n = uniform_int(rng, -3, 3);
    auto [low, high] = weight_truncate(u, n);
    Bigraded c = cone(low, u, coordinate_inclusion(low, u));
    r.checks.push_back({"triangle", name + ": n=" + std::to_string(n),
                        in_weight_le(low, n) && in_weight_ge(high, n + 1) && quasi_isomorphic(c, high)});
  }
  return r;
}

/// Transversality of the t-structure and the weight structure: t-truncations
/// keep weight bounds, heart objects are filtered by graded pieces with
/// pure quotients, and pure objects split into their shifted cohomology.
inline WeightReport transversality_suite(Rng& rng, std::size_t trials) {
  WeightReport r;
  BigradedSampleOptions heart, pure;
  heart.cmin = heart.cmax = 0;
  pure.diagonal = true;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::string name = detail::bigraded_name("object", i);

    Bigraded v = random_bigraded(rng);
    const int n = uniform_int(rng, -3, 3);
    auto range = weight_range(v);
    auto [below, above] = t_truncate(v, n);
    bool exact = true;
    for (const Bigraded* part : {&below, &above}) {
      auto pr = weight_range(*part);
      if (!pr) continue;
      exact = exact && range && pr->first >= range->first && pr->second <= range->second;
    }
    r.checks.push_back({"t-exact", name + ": n=" + std::to_string(n), exact});

    // t-heart: cohomology in c = 0 only, so weight = graded degree.
    Bigraded h = random_bigraded(rng, heart);
    bool filtered = true;
    std::map<Bidegree, std::size_t> total;
    for (int g : h.graded_degrees()) {
      Bigraded piece = graded_piece(h, g);
      // W<=g is closed under d
      for (const auto& [b, m] : h.differentials())
        if (b.g <= g && !m.is_zero()) filtered = filtered && b.next().g <= g;
      std::map<Bidegree, std::size_t> lines;
      for (const auto& [b, d] : cohomology_dims(piece)) {
        filtered = filtered && b.weight() == g;
        lines[b] = d;
        total[b] += d;
      }
      filtered = filtered && quasi_isomorphic(piece, from_dims(lines));
    }
    filtered = filtered && total == cohomology_dims(h);
    r.checks.push_back({"heart-filtration", name, filtered});

    Bigraded p = random_bigraded(rng, pure);
    bool split = false;
    try {
      std::map<Bidegree, std::size_t> parts;
      for (const auto& [g, c, d] : decompose_pure(p)) parts[{g, c}] = d;
      split = quasi_isomorphic(p, from_dims(parts));
    } catch (const NotPure&) {
    }
    r.checks.push_back({"pure-split", name, split});
  }
  // Negative control: weights 0 and 1 together are not pure.
  bool rejected = false;
  try {
    decompose_pure(direct_sum(Bigraded::line(0, 0), Bigraded::line(1, 0)));
  } catch (const NotPure&) {
    rejected = true;
  }
  r.checks.push_back({"pure-split", "negative control: mixed weights rejected", rejected});
  return r;
}

/// Per-axiom (passed, total) counts.
inline std::map<std::string, std::pair<std::size_t, std::size_t>> summarize(const WeightReport& r) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> out;
  for (const auto& c : r.checks) {
    auto& [pass, total] = out[c.axiom];
    pass += c.passed ? 1 : 0;
    ++total;
  }
  return out;
}

}  // namespace hecat
