#include "coherex/eval.h"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coherex/error.h"
#include "coherex/parallel.h"

namespace coherex {

std::size_t count_matches(std::span<const std::string> extracted, std::span<const std::string> authors,
                          const TextProcessor& tp) {
  std::multiset<NormalizedPhrase> remaining;
  std::set<NormalizedPhrase> unique;
  for (const auto& a : authors) {
    try {
      unique.insert(normalize(a, tp));
    } catch (const ContractViolation&) {
    }
  }
  remaining.insert(unique.begin(), unique.end());
  std::size_t matches = 0;
  for (const auto& e : extracted) {
    NormalizedPhrase key;
    try {
      key = normalize(e, tp);
    } catch (const ContractViolation&) {
      continue;
    }
    auto it = remaining.find(key);
    if (it != remaining.end()) {
      remaining.erase(it);
      ++matches;
    }
  }
  return matches;
}

std::size_t count_matches(std::span<const std::string> extracted, std::span<const std::string> authors) {
  static const TextProcessor tp;
  return count_matches(extracted, authors, tp);
}

DocResult evaluate_document(const TrainedExtractor& ex, const Document& doc, std::size_t N_max,
                            const HitsContext& ctx) {
  DocResult r;
  r.doc_id = doc.id;
  const auto tp = ex.text_processor();
  for (const auto& p : extract_keyphrases(ex, doc, N_max, ctx)) r.extracted.push_back(p.phrase);
  const std::vector<std::string> authors = doc.author_keyphrases.value_or(std::vector<std::string>{});
  r.matches.resize(N_max);
  for (std::size_t n = 1; n <= N_max; ++n) {
    const std::size_t take = std::min(n, r.extracted.size());
    r.matches[n - 1] = count_matches(std::span<const std::string>(r.extracted).first(take), authors, tp);
  }
  return r;
}

std::vector<double> performance_curve(std::span<const DocResult> results, std::size_t N_max) {
  if (results.empty()) throw ContractViolation("performance_curve needs at least one document");
  std::vector<double> curve(N_max, 0.0);
  for (std::size_t n = 0; n < N_max; ++n) {
    double sum = 0.0;
    for (const auto& r : results) sum += n < r.matches.size() ? static_cast<double>(r.matches[n]) : 0.0;
    curve[n] = sum / static_cast<double>(results.size());
  }
  return curve;
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ContractViolation("paired t-test: samples differ in length");
  if (a.size() < 2) throw ContractViolation("paired t-test needs at least two pairs");
  const std::size_t n = a.size();
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (a[i] - b[i]) - mean;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(n - 1);
  if (var == 0.0) {
    if (mean == 0.0) return {0.0, 1.0};
    return {std::copysign(std::numeric_limits<double>::infinity(), mean), 0.0};
  }
  const double t = mean / std::sqrt(var / static_cast<double>(n));
  boost::math::students_t dist(static_cast<double>(n - 1));
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  return {t, std::min(1.0, p)};
}

EvalReport compare_feature_sets(const Corpus& corpus, std::span<const NamedExtractor> models, std::size_t N_max,
                                const HitsContext& ctx, unsigned jobs, double alpha) {
  if (N_max < 1) throw ContractViolation("compare needs N_max >= 1");
  if (corpus.documents.empty()) throw DataError("evaluation corpus is empty");
  for (const auto& d : corpus.documents) {
    if (!d.author_keyphrases) throw DataError("evaluation document '" + d.id + "' has no author keyphrases");
  }
  EvalReport report;
  report.corpus = corpus.name;
  report.alpha = alpha;
  std::vector<std::vector<DocResult>> per_model(models.size());
  for (std::size_t m = 0; m < models.size(); ++m) {
    report.names.push_back(models[m].name);
    per_model[m].resize(corpus.documents.size());
    parallel_for(corpus.documents.size(), jobs, [&](std::size_t i) {
      per_model[m][i] = evaluate_document(*models[m].extractor, corpus.documents[i], N_max, ctx);
    });
    report.curves.push_back(performance_curve(per_model[m], N_max));
  }
  if (corpus.documents.size() < 2) return report;
  for (std::size_t n = 1; n <= N_max; ++n) {
    for (std::size_t i = 0; i < models.size(); ++i) {
      for (std::size_t j = i + 1; j < models.size(); ++j) {
        std::vector<double> a, b;
        for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
          a.push_back(static_cast<double>(per_model[i][d].matches[n - 1]));
          b.push_back(static_cast<double>(per_model[j][d].matches[n - 1]));
        }
        PairComparison c;
        c.a = report.names[i];
        c.b = report.names[j];
        c.N = n;
        c.test = paired_t_test(a, b);
        c.significant = c.test.p < alpha;
        report.comparisons.push_back(std::move(c));
      }
    }
  }
  return report;
}

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string curves_table(const EvalReport& r, char sep) {
  std::ostringstream out;
  out << "N";
  for (const auto& name : r.names) out << sep << name;
  out << '\n';
  const std::size_t n_max = r.curves.empty() ? 0 : r.curves.front().size();
  for (std::size_t n = 0; n < n_max; ++n) {
    out << n + 1;
    for (const auto& c : r.curves) out << sep << fmt(c[n]);
    out << '\n';
  }
  return out.str();
}

std::string significance_table(const EvalReport& r, char sep) {
  std::ostringstream out;
  out << "N" << sep << "a" << sep << "b" << sep << "t" << sep << "p" << sep << "significant\n";
  for (const auto& c : r.comparisons) {
    out << c.N << sep << c.a << sep << c.b << sep << fmt(c.test.t) << sep << fmt(c.test.p) << sep
        << (c.significant ? "yes" : "no") << '\n';
  }
  return out.str();
}

std::string report_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["corpus"] = r.corpus;
  j["alpha"] = r.alpha;
  j["curves"] = nlohmann::ordered_json::object();
  for (std::size_t m = 0; m < r.names.size(); ++m) j["curves"][r.names[m]] = r.curves[m];
  j["comparisons"] = nlohmann::ordered_json::array();
  for (const auto& c : r.comparisons) {
    j["comparisons"].push_back({{"N", c.N},
                                {"a", c.a},
                                {"b", c.b},
                                {"t", std::isinf(c.test.t) ? nlohmann::ordered_json(fmt(c.test.t))
                                                           : nlohmann::ordered_json(c.test.t)},
                                {"p", c.test.p},
                                {"significant", c.significant}});
  }
  return j.dump(2) + "\n";
}

}  // namespace coherex
