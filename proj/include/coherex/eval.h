#pragma once

#include <span>
#include <string>
#include <vector>

#include "coherex/pipeline.h"

namespace coherex {

// Extracted phrases whose normalized key equals some author key; each author
// key is consumed by at most one extracted phrase.
std::size_t count_matches(std::span<const std::string> extracted, std::span<const std::string> authors,
                          const TextProcessor& tp);
std::size_t count_matches(std::span<const std::string> extracted, std::span<const std::string> authors);

struct DocResult {
  std::string doc_id;
  // matches[n-1] = matches among the first n extracted phrases.
  std::vector<std::size_t> matches;
  std::vector<std::string> extracted;
};

// Per-document match counts for N = 1..N_max from one extraction of N_max.
DocResult evaluate_document(const TrainedExtractor& ex, const Document& doc, std::size_t N_max,
                            const HitsContext& ctx = {});

// Mean match count over documents at each N. Throws ContractViolation on
// empty input.
std::vector<double> performance_curve(std::span<const DocResult> results, std::size_t N_max);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
};

// Paired t-test on a - b with a two-sided p-value (n - 1 degrees of freedom).
// All-zero differences give (0, 1); zero variance with a non-zero mean gives
// (+-inf, 0).
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

struct PairComparison {
  std::string a;
  std::string b;
  std::size_t N = 0;
  TTestResult test;
  bool significant = false;
};

struct EvalReport {
  std::string corpus;
  std::vector<std::string> names;          // one per compared model
  std::vector<std::vector<double>> curves;  // [model][N-1]
  std::vector<PairComparison> comparisons;  // pairs (i < j) for each N
  double alpha = 0.05;
};

struct NamedExtractor {
  std::string name;
  const TrainedExtractor* extractor = nullptr;
};

EvalReport compare_feature_sets(const Corpus& corpus, std::span<const NamedExtractor> models, std::size_t N_max,
                                const HitsContext& ctx = {}, unsigned jobs = 1, double alpha = 0.05);

// Report rendering: curves as "N,<name>..." rows; significance rows
// "N,a,b,t,p,significant".
std::string curves_table(const EvalReport& r, char sep);
std::string significance_table(const EvalReport& r, char sep);
std::string report_json(const EvalReport& r);

}  // namespace coherex
