// hecat: command-line front end.
//
// Exit codes: 0 success, 2 usage error (bad flags, unknown system, malformed
// words), 3 computation error (module errors are printed verbatim).

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "hecat/hecat.hpp"

using namespace hecat;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything a command prints. JSON gets `doc`; pretty gets `meta` and the
// table; csv gets the table only.
struct Output {
  json doc = json::object();
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void note(const std::string& key, const std::string& value) {
    doc[key] = value;
    meta.emplace_back(key, value);
  }
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render(const Output& o, const std::string& format) {
  if (format == "json") {
    std::cout << o.doc.dump(2) << "\n";
  } else if (format == "csv") {
    auto line = [](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) std::cout << (i ? "," : "") << csv_field(cells[i]);
      std::cout << "\n";
    };
    line(o.header);
    for (const auto& r : o.rows) line(r);
  } else {
    for (const auto& [k, v] : o.meta) std::cout << k << ": " << v << "\n";
    if (o.header.empty()) return;
    std::vector<std::size_t> width(o.header.size());
    for (std::size_t i = 0; i < o.header.size(); ++i) width[i] = o.header[i].size();
    for (const auto& r : o.rows)
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        s += cells[i];
        if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
      }
      std::cout << s << "\n";
    };
    if (!o.meta.empty()) std::cout << "\n";
    line(o.header);
    for (const auto& r : o.rows) line(r);
  }
}

// Parsing of user input: every failure here is a usage error.
template <class F>
CoxeterSystem<F> parse_system(const std::string& name) {
  try {
    return CoxeterSystem<F>::named(name);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

bool golden(const std::string& system) { return system == "I2(5)"; }

template <class F>
Word parse_word(const CoxeterSystem<F>& sys, const std::string& text) {
  try {
    return sys.group().parse_word(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

BraidWord parse_braid(const CoxeterGroup& g, const std::string& text) {
  try {
    return g.parse_braid(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::string laurent(const LaurentPoly& p) { return p.str(); }

json hecke_json(const HeckeElement& x) {
  json terms = json::array();
  for (const auto& [w, c] : x.terms()) terms.push_back({{"element", x.group()->element_string(w)}, {"coefficient", laurent(c)}});
  return terms;
}

void hecke_table(Output& o, const HeckeElement& x) {
  o.header = {"element", "coefficient"};
  for (const auto& [w, c] : x.terms()) o.rows.push_back({x.group()->element_string(w), laurent(c)});
}

// ---- kl -------------------------------------------------------------------

template <class F>
Output kl_with(const std::string& system, const std::string& word) {
  auto sys = parse_system<F>(system);
  const CoxeterGroup& g = sys.group();
  const int w = g.element(parse_word(sys, word));
  HeckeAlgebra h(sys.group_ptr());
  const HeckeElement& b = h.kl(w);
  Output o;
  o.note("system", sys.group().name());
  o.note("element", g.element_string(w));
  o.doc["length"] = g.length(w);
  o.doc["basis"] = "standard";
  o.doc["coefficients"] = hecke_json(b);
  hecke_table(o, b);
  return o;
}

// ---- decompose / homrank -------------------------------------------------

template <class F>
Output decompose_with(const std::string& system, const std::string& word) {
  auto sys = parse_system<F>(system);
  auto ring = PolyRing<F>::make(sys);
  const Word w = parse_word(sys, word);
  Bimodule<F> b = bott_samelson(ring, w);
  const CoxeterGroup& g = ring->group();
  Output o;
  o.note("system", sys.group().name());
  o.note("word", g.word_string(w));
  o.note("character", b.character().str());
  json summands = json::array();
  o.header = {"element", "multiplicity", "shift", "rank"};
  for (const auto& e : decompose(b)) {
    summands.push_back({{"element", g.element_string(e.element)},
                        {"multiplicity", e.multiplicity},
                        {"shift", e.shift},
                        {"rank", e.summand.rank()}});
    o.rows.push_back({g.element_string(e.element), std::to_string(e.multiplicity), std::to_string(e.shift),
                      std::to_string(e.summand.rank())});
  }
  o.doc["summands"] = summands;
  return o;
}

template <class F>
Output homrank_with(const std::string& system, const std::string& word1, const std::string& word2) {
  auto sys = parse_system<F>(system);
  auto ring = PolyRing<F>::make(sys);
  Bimodule<F> b = bott_samelson(ring, parse_word(sys, word1)), c = bott_samelson(ring, parse_word(sys, word2));
  const LaurentPoly lin = graded_hom_rank(b, c), pair = hom_rank_pairing(b, c);
  Output o;
  o.note("system", sys.group().name());
  o.note("graded_hom_rank", laurent(lin));
  o.note("pairing", laurent(pair));
  o.doc["agree"] = lin == pair;
  o.meta.emplace_back("agree", lin == pair ? "true" : "false");
  o.header = {"degree", "dimension"};
  for (const auto& [d, x] : lin.terms()) o.rows.push_back({std::to_string(d), std::to_string(x)});
  return o;
}

// ---- complexes -----------------------------------------------------------

struct BraidInput {
  CategoryPtr<Rational> cat;
  BraidWord braid;
};

BraidInput braid_input(const std::string& system, const std::string& word) {
  auto sys = parse_system<Rational>(system);
  if (!sys.is_type_a()) throw NotTypeA("Rouquier complexes need a type A system, got " + sys.group().name());
  BraidInput in{SoergelCategory<Rational>::make(sys), {}};
  in.braid = parse_braid(in.cat->group(), word);
  return in;
}

Output cmd_rouquier(const std::string& system, const std::string& word, bool reduced) {
  BraidInput in = braid_input(system, word);
  BimoduleComplex<Rational> c = rouquier(in.cat, in.braid);
  if (reduced) c = gaussian_eliminate(c);
  const CoxeterGroup& g = in.cat->group();
  Output o;
  o.note("system", in.cat->ring()->group().name());
  o.note("braid", g.braid_string(in.braid));
  o.doc["reduced"] = reduced;
  json degrees = json::array();
  o.header = {"degree", "index", "element", "shift", "rank"};
  for (const auto& [i, term] : c.terms()) {
    json summands = json::array();
    for (std::size_t p = 0; p < term.size(); ++p) {
      const auto& s = term[p];
      const std::string el = s.labeled() ? g.element_string(s.element) : "raw";
      summands.push_back({{"element", el}, {"shift", s.shift}, {"rank", s.object.rank()}});
      o.rows.push_back({std::to_string(i), std::to_string(p), el, std::to_string(s.shift), std::to_string(s.object.rank())});
    }
    json diff = json::array();
    for (const auto& [key, f] : c.differential(i)) {
      json m = json::array();
      for (std::size_t r = 0; r < f.rows(); ++r) {
        json row = json::array();
        for (std::size_t k = 0; k < f.cols(); ++k) row.push_back(f(r, k).str());
        m.push_back(row);
      }
      diff.push_back({{"target", key.first}, {"source", key.second}, {"matrix", m}});
    }
    degrees.push_back({{"degree", i}, {"summands", summands}, {"differential", diff}});
  }
  o.doc["degrees"] = degrees;
  return o;
}

Output cmd_kclass(const std::string& system, const std::string& word) {
  BraidInput in = braid_input(system, word);
  HeckeElement k = k_class(rouquier(in.cat, in.braid));
  Output o;
  o.note("system", in.cat->ring()->group().name());
  o.note("braid", in.cat->group().braid_string(in.braid));
  o.doc["basis"] = "standard";
  o.doc["coefficients"] = hecke_json(k);
  hecke_table(o, k);
  return o;
}

Output cmd_homotopy_eq(const std::string& system, const std::string& w1, const std::string& w2, unsigned seed) {
  BraidInput a = braid_input(system, w1);
  BraidWord b = parse_braid(a.cat->group(), w2);
  const bool eq = homotopy_equal(rouquier(a.cat, a.braid), rouquier(a.cat, b), seed);
  Output o;
  o.note("system", a.cat->ring()->group().name());
  o.note("left", a.cat->group().braid_string(a.braid));
  o.note("right", a.cat->group().braid_string(b));
  o.doc["equal"] = eq;
  o.header = {"left", "right", "equal"};
  o.rows.push_back({o.meta[1].second, o.meta[2].second, eq ? "true" : "false"});
  return o;
}

// ---- homfly --------------------------------------------------------------

Output cmd_homfly(int strands, const std::string& word, bool homology) {
  if (strands < 1 || strands > 5) throw UsageError("strands must be between 1 and 5");
  auto sys = sl_system(strands);
  const BraidWord b = parse_braid(sys.group(), word);
  for (const auto& l : b)
    if (l.gen + 1 >= strands) throw UsageError("braid letter outside the strand range");
  Output o;
  o.doc["strands"] = strands;
  o.note("braid", sys.group().braid_string(b));
  o.note("homfly", homfly(strands, b).str());
  o.note("trace", trace::Trace(trace::hochschild_convention())(trace::braid_image(strands, b)).str());
  if (!homology) {
    o.header = {"quantity", "value"};
    o.rows = {{"homfly", o.meta[1].second}, {"trace", o.meta[2].second}};
    return o;
  }
  TriplyGraded t = triply_graded(strands, b);
  json entries = json::array();
  o.header = {"h", "g", "c", "dim"};
  for (const auto& [k, d] : t.dims) {
    const auto& [h, g, c] = k;
    entries.push_back({{"h", h}, {"g", g}, {"c", c}, {"dim", d}});
    o.rows.push_back({std::to_string(h), std::to_string(g), std::to_string(c), std::to_string(d)});
  }
  o.doc["entries"] = entries;
  o.doc["window"] = {t.lo, t.hi};
  o.meta.emplace_back("window", "[" + std::to_string(t.lo) + ", " + std::to_string(t.hi) + "]");
  json series = json::array();
  for (const auto& [hc, p] : t.numerators) series.push_back({{"h", hc.first}, {"c", hc.second}, {"numerator", laurent(p)}});
  o.doc["series"] = series;
  o.doc["series_denominator"] = "(1-v^2)^" + std::to_string(t.nvars);
  o.note("euler", euler_characteristic(t).str());
  return o;
}

// ---- mixed-demo ----------------------------------------------------------

std::size_t h0(const Bigraded& v) {
  std::size_t n = 0;
  for (const auto& [b, d] : cohomology_dims(v))
    if (b.c == 0) n += d;
  return n;
}

Output cmd_mixed_demo() {
  // The unit over the degree-2 point, seen over the base point and over itself.
  const MixedObject over2 = MixedObject::unit(2);
  const std::size_t d1 = h0(hom_graded(MixedObject::unit(1), induce(over2, 1)));
  const std::size_t d2 = h0(hom_graded(over2, over2));
  Output o;
  o.doc["over_pt1"] = d1;
  o.doc["over_pt2"] = d2;
  o.meta = {{"over_pt1", std::to_string(d1)}, {"over_pt2", std::to_string(d2)}};
  o.header = {"base", "dimension"};
  o.rows = {{"pt1", std::to_string(d1)}, {"pt2", std::to_string(d2)}};
  return o;
}

// ---- weight-suite --------------------------------------------------------

Output cmd_weight_suite(std::size_t trials, unsigned seed) {
  Rng rng(seed);
  std::vector<std::pair<std::string, WeightReport>> reports;
  reports.emplace_back("bigraded", bigraded_weight_suite(rng, trials));
  reports.emplace_back("transversality", transversality_suite(rng, trials));
  auto cat = SoergelCategory<Rational>::make(CoxeterSystem<Rational>::named("A2"));
  std::vector<BimoduleComplex<Rational>> sample;
  for (const char* w : {"s", "-t", "s t", "s -t", "s t s"}) sample.push_back(rouquier(cat, cat->group().parse_braid(w)));
  for (int i = 0; i < 2; ++i) {
    BraidWord b;
    for (int k = 0; k < 2; ++k) b.push_back({uniform_int(rng, 0, 1), uniform_int(rng, 0, 1) == 1});
    sample.push_back(rouquier(cat, b));
  }
  reports.emplace_back("complexes A2", weight_axiom_suite(sample));

  Output o;
  o.doc["seed"] = seed;
  o.doc["trials"] = trials;
  json rows = json::array();
  std::size_t failures = 0;
  o.header = {"suite", "axiom", "passed", "total", "status"};
  for (const auto& [suite, r] : reports) {
    for (const auto& [axiom, counts] : summarize(r)) {
      const bool ok = counts.first == counts.second;
      rows.push_back({{"suite", suite}, {"axiom", axiom}, {"passed", counts.first}, {"total", counts.second}, {"ok", ok}});
      o.rows.push_back({suite, axiom, std::to_string(counts.first), std::to_string(counts.second), ok ? "PASS" : "FAIL"});
    }
    failures += r.failures();
    json failed = json::array();
    for (const auto& c : r.checks)
      if (!c.passed) failed.push_back(c.axiom + ": " + c.subject);
    if (!failed.empty()) o.doc["failed_checks"][suite] = failed;
  }
  o.doc["suites"] = rows;
  o.doc["failures"] = failures;
  o.meta = {{"seed", std::to_string(seed)}, {"failures", std::to_string(failures)}};
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soergel bimodules, Rouquier complexes and triply graded homology"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  unsigned seed = 1;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--seed", seed, "Seed for randomized suites and searches");

  std::string system, word, word2;
  int strands = 0;
  bool reduced = false, homology = false;
  std::size_t trials = 100;

  auto* kl = app.add_subcommand("kl", "Kazhdan-Lusztig basis element in the standard basis");
  kl->add_option("system", system)->required();
  kl->add_option("word", word)->required();

  auto* dec = app.add_subcommand("decompose", "Indecomposable summands of a Bott-Samelson bimodule");
  dec->add_option("system", system)->required();
  dec->add_option("word", word)->required();

  auto* hr = app.add_subcommand("homrank", "Graded rank of Hom between two Bott-Samelson bimodules");
  hr->add_option("system", system)->required();
  hr->add_option("word1", word)->required();
  hr->add_option("word2", word2)->required();

  auto* rq = app.add_subcommand("rouquier", "Rouquier complex of a braid word");
  rq->add_option("system", system)->required();
  rq->add_option("braid", word)->required();
  rq->add_flag("--reduced", reduced, "Gaussian-eliminate before printing");

  auto* kc = app.add_subcommand("kclass", "Class of the Rouquier complex in the Hecke algebra");
  kc->add_option("system", system)->required();
  kc->add_option("braid", word)->required();

  auto* he = app.add_subcommand("homotopy-eq", "Homotopy equivalence of two Rouquier complexes");
  he->add_option("system", system)->required();
  he->add_option("braid1", word)->required();
  he->add_option("braid2", word2)->required();

  auto* hf = app.add_subcommand("homfly", "HOMFLY-PT polynomial and triply graded homology of a braid closure");
  hf->add_option("strands", strands)->required();
  hf->add_option("braid", word)->required();
  hf->add_flag("--homology", homology, "Compute the triply graded homology table");

  auto* md = app.add_subcommand("mixed-demo", "Graded Hom of the unit over the degree-2 point");

  auto* ws = app.add_subcommand("weight-suite", "Weight-structure and transversality property suites");
  ws->add_option("--trials", trials, "Random objects per bigraded suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    Output o;
    if (kl->parsed()) {
      o = golden(system) ? kl_with<GoldenField>(system, word) : kl_with<Rational>(system, word);
    } else if (dec->parsed()) {
      o = golden(system) ? decompose_with<GoldenField>(system, word) : decompose_with<Rational>(system, word);
    } else if (hr->parsed()) {
      o = golden(system) ? homrank_with<GoldenField>(system, word, word2) : homrank_with<Rational>(system, word, word2);
    } else if (rq->parsed()) {
      o = cmd_rouquier(system, word, reduced);
    } else if (kc->parsed()) {
      o = cmd_kclass(system, word);
    } else if (he->parsed()) {
      o = cmd_homotopy_eq(system, word, word2, seed);
    } else if (hf->parsed()) {
      o = cmd_homfly(strands, word, homology);
    } else if (md->parsed()) {
      o = cmd_mixed_demo();
    } else if (ws->parsed()) {
      o = cmd_weight_suite(trials, seed);
      render(o, format);
      if (o.doc["failures"].get<std::size_t>() != 0) {
        std::cerr << "error: weight suite reported " << o.doc["failures"].get<std::size_t>() << " failures\n";
        return 3;
      }
      return 0;
    }
    render(o, format);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
