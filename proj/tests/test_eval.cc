#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "coherex/error.h"
#include "coherex/eval.h"
#include "synthetic.h"

using namespace coherex;

namespace {

std::size_t matches(std::vector<std::string> e, std::vector<std::string> a) { return count_matches(e, a); }

}  // namespace

TEST_CASE("count_matches") {
  CHECK(matches({"Neural Networks"}, {"neural network"}) == 1);
  CHECK(matches({"cats", "dogs"}, {"trees"}) == 0);
  CHECK(matches({"neural network", "Neural Networks"}, {"neural network"}) == 1);
  CHECK(matches({"a b c d e"}, {"a b c d e"}) == 0);
  CHECK(matches({}, {"x"}) == 0);
  std::mt19937 rng(3);
  const std::vector<std::string> pool{"alpha", "Alpha", "alphas", "beta", "gamma ray", "gamma rays", "delta"};
  for (int t = 0; t < 200; ++t) {
    std::vector<std::string> e, a;
    for (std::size_t i = rng() % 6; i > 0; --i) e.push_back(pool[rng() % pool.size()]);
    for (std::size_t i = rng() % 6; i > 0; --i) a.push_back(pool[rng() % pool.size()]);
    CHECK(matches(e, a) <= std::min(e.size(), a.size()));
  }
}

TEST_CASE("performance_curve") {
  const std::vector<DocResult> two{{"a", {0, 1, 1, 1, 1}, {}}, {"b", {1, 1, 2, 2, 2}, {}}};
  const auto c = performance_curve(two, 5);
  CHECK(c == std::vector<double>{0.5, 1.0, 1.5, 1.5, 1.5});
  const std::vector<DocResult> zero{{"z", {0, 0, 0}, {}}};
  CHECK(performance_curve(zero, 3) == std::vector<double>{0, 0, 0});
  const std::vector<DocResult> one{{"s", {1, 2, 3}, {}}};
  CHECK(performance_curve(one, 3) == std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(performance_curve({}, 3), ContractViolation);
}

TEST_CASE("paired_t_test: reference values") {
  const std::vector<double> a{1, 2, 3, 4}, z{0, 0, 0, 0};
  const auto r = paired_t_test(a, z);
  CHECK(r.t == doctest::Approx(3.872983346207417).epsilon(1e-12));
  CHECK(r.p == doctest::Approx(0.030466291662170977).epsilon(1e-9));

  const std::vector<double> x{3, 1, 4, 1, 5, 9, 2, 6}, y{2, 7, 1, 8, 2, 8, 1, 8};
  const auto q = paired_t_test(x, y);
  CHECK(q.t == doctest::Approx(-0.5464230952770323).epsilon(1e-12));
  CHECK(q.p == doctest::Approx(0.6017489092276609).epsilon(1e-9));
  const auto swapped = paired_t_test(y, x);
  CHECK(swapped.t == -q.t);
  CHECK(swapped.p == q.p);
}

TEST_CASE("paired_t_test: degenerate cases") {
  const std::vector<double> a{1, 2, 3}, b{0, 1, 2};
  const auto same = paired_t_test(a, a);
  CHECK(same.t == 0.0);
  CHECK(same.p == 1.0);
  const auto shift = paired_t_test(b, a);
  CHECK(std::isinf(shift.t));
  CHECK(shift.t < 0);
  CHECK(shift.p == 0.0);
  const std::vector<double> one{1};
  CHECK_THROWS_AS(paired_t_test(one, one), ContractViolation);
  CHECK_THROWS_AS(paired_t_test(a, one), ContractViolation);
}

TEST_CASE("paired_t_test: p-values are uniform under the null") {
  std::mt19937 rng(2718);
  std::normal_distribution<double> g(0, 1);
  std::vector<double> ps;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> a(20), b(20);
    for (int i = 0; i < 20; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
    }
    ps.push_back(paired_t_test(a, b).p);
  }
  std::sort(ps.begin(), ps.end());
  double ks = 0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    ks = std::max({ks, std::abs(ps[i] - static_cast<double>(i) / ps.size()),
                   std::abs(ps[i] - static_cast<double>(i + 1) / ps.size())});
  }
  CHECK(ks < 0.05);
}

TEST_CASE("compare_feature_sets: pairs, curves and identical models") {
  synth::PlantedOptions o;
  o.documents = 16;
  o.filler_words = 100;
  o.repeats = 3;
  const auto docs = synth::planted_corpus(o);
  const auto train = synth::to_corpus(docs, 0, 8);
  const auto test = synth::to_corpus(docs, 8, 16, "held");
  ExtractorConfig cfg;
  const auto base = train_extractor(train, cfg);
  cfg.feature_set = FeatureSet::kKeyfreq;
  const auto kf = train_extractor(train, cfg);

  const std::vector<NamedExtractor> four{{"a", &base}, {"b", &kf}, {"c", &base}, {"d", &kf}};
  const auto r = compare_feature_sets(test, four, 20, {}, 3);
  CHECK(r.curves.size() == 4);
  CHECK(r.comparisons.size() == 6 * 20);
  for (const auto& c : r.curves) {
    CHECK(c.size() == 20);
    CHECK(std::is_sorted(c.begin(), c.end()));
  }
  for (const auto& p : r.comparisons) {
    if ((p.a == "a" && p.b == "c") || (p.a == "b" && p.b == "d")) {
      CHECK(p.test.p == 1.0);
      CHECK_FALSE(p.significant);
    }
  }
  const std::vector<NamedExtractor> pair{{"a", &base}, {"b", &kf}};
  CHECK(compare_feature_sets(test, pair, 5).comparisons.size() == 5);

  const auto csv = curves_table(r, ',');
  CHECK(csv.rfind("N,a,b,c,d\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
  const auto sig = significance_table(r, '\t');
  CHECK(std::count(sig.begin(), sig.end(), '\n') == 121);
  CHECK(report_json(r).find("\"comparisons\"") != std::string::npos);
  CHECK(report_json(compare_feature_sets(test, four, 20, {}, 1)) == report_json(r));
}
