#include "coherex/coherence.h"

#include <algorithm>
#include <numeric>

#include "coherex/error.h"

namespace coherex {

std::string_view feature_set_name(FeatureSet fs) {
  switch (fs) {
    case FeatureSet::kBaseline:
      return "baseline";
    case FeatureSet::kKeyfreq:
      return "keyfreq";
    case FeatureSet::kCoherence:
      return "coherence";
    case FeatureSet::kMerged:
      return "merged";
  }
  return "?";
}

FeatureSet parse_feature_set(std::string_view name) {
  if (name == "baseline") return FeatureSet::kBaseline;
  if (name == "keyfreq") return FeatureSet::kKeyfreq;
  if (name == "coherence") return FeatureSet::kCoherence;
  if (name == "merged") return FeatureSet::kMerged;
  throw ConfigError("unknown feature set '" + std::string(name) + "' (baseline, keyfreq, coherence, merged)");
}

bool uses_keyfreq(FeatureSet fs) { return fs == FeatureSet::kKeyfreq || fs == FeatureSet::kMerged; }
bool uses_coherence(FeatureSet fs) { return fs == FeatureSet::kCoherence || fs == FeatureSet::kMerged; }
FeatureSet first_pass_set(FeatureSet fs) { return uses_keyfreq(fs) ? FeatureSet::kKeyfreq : FeatureSet::kBaseline; }

std::vector<std::string> base_feature_names(FeatureSet fs) {
  if (uses_keyfreq(first_pass_set(fs))) return {"tfidf", "distance", "keyphrase_frequency"};
  return {"tfidf", "distance"};
}

std::vector<double> base_feature_values(const CandidateRow& row, FeatureSet fs) {
  if (uses_keyfreq(first_pass_set(fs))) return {row.tfidf, row.distance, static_cast<double>(row.keyphrase_frequency)};
  return {row.tfidf, row.distance};
}

bool ranks_before(const CandidateRow& a, double pa, const CandidateRow& b, double pb) {
  if (pa != pb) return pa > pb;
  if (a.tfidf != b.tfidf) return a.tfidf > b.tfidf;
  if (a.candidate.first_occurrence_word_index != b.candidate.first_occurrence_word_index) {
    return a.candidate.first_occurrence_word_index < b.candidate.first_occurrence_word_index;
  }
  return a.candidate.key < b.candidate.key;
}

FirstPassRanking first_pass(std::span<const CandidateRow> rows, const NaiveBayesModel& model,
                            std::span<const DiscretizationScheme> schemes, FeatureSet first_set, std::size_t K,
                            std::size_t L) {
  if (K >= L) throw ContractViolation("first pass needs K < L");
  const std::size_t arity = base_feature_names(first_set).size();
  if (schemes.size() != arity || model.arity() != arity) {
    throw ContractViolation("first pass: model/scheme arity does not match the feature set");
  }
  FirstPassRanking out;
  out.K = K;
  out.L = L;
  if (rows.empty()) return out;

  std::vector<int> matrix;
  matrix.reserve(rows.size() * arity);
  for (const auto& r : rows) {
    const auto vals = base_feature_values(r, first_set);
    for (std::size_t f = 0; f < arity; ++f) matrix.push_back(static_cast<int>(discretize(vals[f], schemes[f])));
  }
  const auto probs = model.posterior_batch(matrix);
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ranks_before(rows[a], probs[a], rows[b], probs[b]); });
  order.resize(std::min(L, order.size()));
  for (std::size_t i : order) out.ranked.push_back({i, probs[i]});
  return out;
}

std::vector<double> percentile_rank(std::span<const double> scores) {
  const std::size_t n = scores.size();
  std::vector<double> out(n);
  if (n == 0) return out;
  if (n == 1) {
    out[0] = 1.0;
    return out;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    // Positions i..j share the mean of their percentiles.
    const double pct = (static_cast<double>(i) + static_cast<double>(j - i) / 2.0) / denom;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = pct;
    i = j + 1;
  }
  return out;
}

AssociationFeatures association_features(const FirstPassRanking& ranking, std::span<const CandidateRow> rows,
                                         HitOracle& oracle) {
  if (ranking.ranked.empty()) throw ContractViolation("association features need a non-empty ranking");
  const std::size_t n = ranking.ranked.size();
  const std::size_t K = ranking.K;
  const auto anchors = ranking.anchors();
  AssociationFeatures out;
  out.rank_low.assign(n, std::vector<double>(K, 0.0));
  out.rank_cap.assign(n, std::vector<double>(K, 0.0));
  out.score_low.assign(n, std::vector<double>(K, 0.0));
  out.score_cap.assign(n, std::vector<double>(K, 0.0));

  std::vector<double> col_low(n), col_cap(n);
  for (std::size_t j = 0; j < anchors.size(); ++j) {
    const std::string& anchor = rows[anchors[j].row].candidate.surface();
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& phrase = rows[ranking.ranked[i].row].candidate.surface();
      col_low[i] = score_low(oracle, phrase, anchor);
      col_cap[i] = score_cap(oracle, phrase, anchor);
      out.score_low[i][j] = col_low[i];
      out.score_cap[i][j] = col_cap[i];
    }
    const auto pl = percentile_rank(col_low);
    const auto pc = percentile_rank(col_cap);
    for (std::size_t i = 0; i < n; ++i) {
      out.rank_low[i][j] = pl[i];
      out.rank_cap[i][j] = pc[i];
    }
  }
  return out;
}

std::vector<double> CoherenceVector::values() const {
  std::vector<double> v{tfidf, distance, static_cast<double>(first_pass_rank), first_pass_probability};
  v.insert(v.end(), rank_low.begin(), rank_low.end());
  v.insert(v.end(), rank_cap.begin(), rank_cap.end());
  if (keyphrase_frequency) v.push_back(static_cast<double>(*keyphrase_frequency));
  return v;
}

std::vector<std::string> coherence_feature_names(std::size_t K, bool merged) {
  std::vector<std::string> names{"tfidf", "distance", merged ? "key_freq_rank" : "baseline_rank",
                                 merged ? "key_freq_probability" : "baseline_probability"};
  for (std::size_t j = 1; j <= K; ++j) names.push_back("rank_low_" + std::to_string(j));
  for (std::size_t j = 1; j <= K; ++j) names.push_back("rank_cap_" + std::to_string(j));
  if (merged) names.push_back("keyphrase_frequency");
  return names;
}

std::vector<CoherenceVector> assemble(const FirstPassRanking& ranking, std::span<const CandidateRow> rows,
                                      const AssociationFeatures& association, bool merged) {
  const std::size_t n = ranking.ranked.size();
  if (association.rank_low.size() != n || association.rank_cap.size() != n) {
    throw ContractViolation("assemble: association rows do not match the ranking");
  }
  std::vector<CoherenceVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& rc = ranking.ranked[i];
    if (rc.row >= rows.size()) throw ContractViolation("assemble: ranking refers to a missing candidate");
    if (association.rank_low[i].size() != ranking.K || association.rank_cap[i].size() != ranking.K) {
      throw ContractViolation("assemble: association width differs from K");
    }
    const auto& row = rows[rc.row];
    CoherenceVector v;
    v.tfidf = row.tfidf;
    v.distance = row.distance;
    v.first_pass_rank = static_cast<int>(i + 1);
    v.first_pass_probability = rc.probability;
    v.rank_low = association.rank_low[i];
    v.rank_cap = association.rank_cap[i];
    if (merged) v.keyphrase_frequency = row.keyphrase_frequency;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace coherex
