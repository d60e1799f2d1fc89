#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <json.hpp>
#include <string>

#include "hecat/hecat.hpp"

using nlohmann::json;

namespace {

struct Invocation {
  int code = -1;
  std::string out;
};

Invocation run(const std::string& args) {
  const std::string cmd = std::string(HECAT_CLI_PATH) + " " + args + " 2>/dev/null";
  Invocation r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args) {
  Invocation r = run(args);
  EXPECT_EQ(r.code, 0) << args;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, KlCoefficientsArePowersOfV) {
  json j = run_json("kl A2 sts");
  auto sys = hecat::CoxeterSystem<hecat::Rational>::named("A2");
  const auto& g = sys.group();
  ASSERT_EQ(j["coefficients"].size(), g.size());
  for (const auto& t : j["coefficients"]) {
    const int x = g.element(g.parse_word(t["element"].get<std::string>()));
    EXPECT_EQ(t["coefficient"].get<std::string>(), hecat::LaurentPoly::monomial(3 - g.length(x)).str());
  }
}

TEST(Cli, MixedDemo) {
  json j = run_json("mixed-demo");
  EXPECT_EQ(j["over_pt1"], 2);
  EXPECT_EQ(j["over_pt2"], 1);
}

TEST(Cli, HomotopyEquivalence) {
  EXPECT_EQ(run_json("homotopy-eq A2 \"s t s\" \"t s t\"")["equal"], true);
  EXPECT_EQ(run_json("homotopy-eq A2 \"s t s\" \"s t -s\"")["equal"], false);
  EXPECT_EQ(run_json("homotopy-eq A2 \"s -s\" \"\"")["equal"], true);
}

TEST(Cli, DecomposeAndHomrank) {
  json d = run_json("decompose A2 \"s t s\"");
  ASSERT_EQ(d["summands"].size(), 2u);
  EXPECT_EQ(d["summands"][0]["element"], "sts");
  EXPECT_EQ(d["summands"][1]["element"], "s");
  json h = run_json("homrank A1 s s");
  EXPECT_EQ(h["graded_hom_rank"], "1+v^2");
  EXPECT_EQ(h["agree"], true);
  EXPECT_EQ(run_json("homrank \"I2(5)\" st s")["agree"], true);
}

TEST(Cli, RouquierDumpAndKclass) {
  json r = run_json("rouquier A2 \"s t\"");
  ASSERT_EQ(r["degrees"].size(), 3u);
  EXPECT_EQ(r["degrees"][0]["degree"], 0);
  EXPECT_EQ(r["degrees"][1]["summands"].size(), 2u);
  EXPECT_FALSE(r["degrees"][0]["differential"].empty());
  json k = run_json("kclass A2 \"s\"");
  ASSERT_EQ(k["coefficients"].size(), 1u);
  EXPECT_EQ(k["coefficients"][0]["element"], "s");
  EXPECT_EQ(k["coefficients"][0]["coefficient"], "1");
}

TEST(Cli, HomflyHomologyEuler) {
  json j = run_json("homfly 2 \"s s s\" --homology");
  ASSERT_FALSE(j["entries"].empty());
  for (const auto& e : j["entries"]) EXPECT_GT(e["dim"].get<int>(), 0);
  const auto t = hecat::triply_graded(2, hecat::sl_system(2).group().parse_braid("s s s"));
  EXPECT_EQ(j["euler"], hecat::euler_characteristic(t).str());
  EXPECT_EQ(j["homfly"], hecat::skein_torus2(3).str());
}

TEST(Cli, FormatsAndDeterminism) {
  Invocation a = run("--format csv decompose A2 \"s s\""), b = run("decompose A2 \"s s\" --format csv");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "element,multiplicity,shift,rank");
  Invocation p = run("--format pretty mixed-demo");
  EXPECT_NE(p.out.find("over_pt1: 2"), std::string::npos);
  for (const char* args : {"homfly 3 \"s t s\" --homology", "rouquier A2 \"s -t s\" --reduced", "weight-suite --trials 20 --seed 4"})
    EXPECT_EQ(run(args).out, run(args).out) << args;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("kl A2 sts --bogus").code, 2);
  EXPECT_EQ(run("--format xml kl A2 s").code, 2);
  EXPECT_EQ(run("kl A2 \"s q\"").code, 2);
  EXPECT_EQ(run("kl Z7 s").code, 2);
  EXPECT_EQ(run("rouquier A2 \"--s\"").code, 2);
  EXPECT_EQ(run("homfly 2 \"t\"").code, 2);
  EXPECT_EQ(run("rouquier B2 s").code, 3);
  EXPECT_EQ(run("kl A2 sts").code, 0);
}

TEST(Cli, WeightSuite) {
  json j = run_json("weight-suite --trials 30 --seed 9");
  EXPECT_EQ(j["failures"], 0);
  EXPECT_EQ(j["seed"], 9);
  bool complexes = false;
  for (const auto& r : j["suites"]) {
    EXPECT_EQ(r["ok"], true) << r.dump();
    complexes = complexes || r["suite"] == "complexes A2";
  }
  EXPECT_TRUE(complexes);
}
