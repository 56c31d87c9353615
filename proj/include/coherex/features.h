#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "coherex/candidates.h"
#include "coherex/text.h"

namespace coherex {

// Document frequencies of candidate keys over a reference corpus. Keys are
// NormalizedPhrase::text().
struct CorpusStats {
  std::size_t document_count = 0;
  std::map<std::string, std::size_t> doc_frequency;
  // Ids of the documents counted above.
  std::set<std::string> document_ids;

  static CorpusStats Build(const Corpus& corpus, const TextProcessor& tp, unsigned jobs = 1);

  std::size_t df(const NormalizedPhrase& key) const;
  bool contains_document(const std::string& id) const { return document_ids.count(id) != 0; }
};

// How often each key was an author keyphrase, per document.
struct KeyfreqTable {
  std::map<std::string, std::map<std::string, int>> counts;

  // Each document contributes at most 1 per distinct normalized author key.
  // Author keyphrases that do not normalize (over three words) are skipped.
  static KeyfreqTable Build(const Corpus& corpus, const TextProcessor& tp);
};

// (tf / word_count) * -log2(df' / N'). When the document is already part of
// the stats, df' = df and N' = N; otherwise both are incremented by one.
// Throws ContractViolation for an empty document.
double tfidf(const CandidatePhrase& cand, const Document& doc, const CorpusStats& stats);

// The raw formula, for callers that already know df' and N'.
double tfidf_value(int term_frequency, std::size_t word_count, std::size_t df_prime, std::size_t docs_prime);

// Words preceding the first occurrence over the document length.
double distance(const CandidatePhrase& cand, const Document& doc);

// Author-keyphrase uses of `key` in every document except `current_doc_id`.
int keyphrase_frequency(const NormalizedPhrase& key, const KeyfreqTable& table, const std::string& current_doc_id);

struct DiscretizationScheme {
  std::string feature_name;
  std::vector<double> cut_points;

  std::size_t interval_count() const { return cut_points.size() + 1; }
  bool operator==(const DiscretizationScheme&) const = default;
};

// Fayyad-Irani recursive entropy splitting with the MDL stopping rule. Only
// boundary points are tried; equal gains keep the smaller cut.
DiscretizationScheme fit_discretization(std::span<const double> values, std::span<const bool> labels,
                                        std::string feature_name = {});

// Index of the right-closed interval holding `value`: the number of cut
// points strictly below it.
std::size_t discretize(double value, const DiscretizationScheme& scheme);

// Entropy in bits of a two-class set with the given counts.
double class_entropy(std::size_t positives, std::size_t negatives);

}  // namespace coherex
