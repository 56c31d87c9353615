#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coherex/bayes.h"
#include "coherex/candidates.h"
#include "coherex/features.h"
#include "coherex/hits.h"

namespace coherex {

enum class FeatureSet { kBaseline, kKeyfreq, kCoherence, kMerged };

std::string_view feature_set_name(FeatureSet fs);
// Throws ConfigError for unknown names.
FeatureSet parse_feature_set(std::string_view name);
bool uses_keyfreq(FeatureSet fs);
bool uses_coherence(FeatureSet fs);
// The set whose model runs the first pass (baseline or keyfreq).
FeatureSet first_pass_set(FeatureSet fs);

// A candidate together with its first-pass feature values.
struct CandidateRow {
  CandidatePhrase candidate;
  double tfidf = 0.0;
  double distance = 0.0;
  int keyphrase_frequency = 0;
};

// Names of the first-pass features for `fs` (two or three).
std::vector<std::string> base_feature_names(FeatureSet fs);
std::vector<double> base_feature_values(const CandidateRow& row, FeatureSet fs);

struct RankedCandidate {
  std::size_t row = 0;  // index into the document's CandidateRow list
  double probability = 0.0;
};

struct FirstPassRanking {
  std::vector<RankedCandidate> ranked;  // descending, at most L entries
  std::size_t K = 0;
  std::size_t L = 0;

  std::span<const RankedCandidate> anchors() const {
    return std::span<const RankedCandidate>(ranked).first(std::min(K, ranked.size()));
  }
};

// Descending probability, then higher TF x IDF, earlier first occurrence,
// lexicographically smaller key.
bool ranks_before(const CandidateRow& a, double pa, const CandidateRow& b, double pb);

// Scores every row with the first-pass model and keeps the top L. Requires
// K < L and one scheme per first-pass feature.
FirstPassRanking first_pass(std::span<const CandidateRow> rows, const NaiveBayesModel& model,
                            std::span<const DiscretizationScheme> schemes, FeatureSet first_set, std::size_t K,
                            std::size_t L);

// Fraction of other entries with a strictly smaller score, ties averaged;
// a single entry gets 1.0.
std::vector<double> percentile_rank(std::span<const double> scores);

struct AssociationFeatures {
  // [candidate in ranking order][anchor j]; anchors missing from short
  // rankings read 0.
  std::vector<std::vector<double>> rank_low;
  std::vector<std::vector<double>> rank_cap;
  // Raw Eq.-style ratios before percentile conversion, same layout.
  std::vector<std::vector<double>> score_low;
  std::vector<std::vector<double>> score_cap;
};

// Scores each ranked candidate against each anchor with its most frequent
// surface form, then converts each anchor column to percentiles.
AssociationFeatures association_features(const FirstPassRanking& ranking, std::span<const CandidateRow> rows,
                                         HitOracle& oracle);

struct CoherenceVector {
  double tfidf = 0.0;
  double distance = 0.0;
  int first_pass_rank = 0;  // baseline_rank or key_freq_rank, 1-based
  double first_pass_probability = 0.0;
  std::vector<double> rank_low;
  std::vector<double> rank_cap;
  std::optional<int> keyphrase_frequency;  // merged only

  std::size_t arity() const { return 4 + rank_low.size() + rank_cap.size() + (keyphrase_frequency ? 1 : 0); }
  std::vector<double> values() const;
};

std::vector<std::string> coherence_feature_names(std::size_t K, bool merged);

std::vector<CoherenceVector> assemble(const FirstPassRanking& ranking, std::span<const CandidateRow> rows,
                                      const AssociationFeatures& association, bool merged);

}  // namespace coherex
