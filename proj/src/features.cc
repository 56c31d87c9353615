#include "coherex/features.h"

#include <algorithm>
#include <cmath>

#include "coherex/error.h"
#include "coherex/parallel.h"

namespace coherex {

CorpusStats CorpusStats::Build(const Corpus& corpus, const TextProcessor& tp, unsigned jobs) {
  std::vector<std::vector<std::string>> keys(corpus.documents.size());
  parallel_for(corpus.documents.size(), jobs, [&](std::size_t i) {
    for (const auto& c : generate_candidates(corpus.documents[i], tp)) keys[i].push_back(c.key.text());
  });
  CorpusStats stats;
  stats.document_count = corpus.documents.size();
  for (std::size_t i = 0; i < keys.size(); ++i) {
    stats.document_ids.insert(corpus.documents[i].id);
    for (const auto& k : keys[i]) stats.doc_frequency[k] += 1;
  }
  return stats;
}

std::size_t CorpusStats::df(const NormalizedPhrase& key) const {
  auto it = doc_frequency.find(key.text());
  return it == doc_frequency.end() ? 0 : it->second;
}

KeyfreqTable KeyfreqTable::Build(const Corpus& corpus, const TextProcessor& tp) {
  KeyfreqTable table;
  for (const auto& doc : corpus.documents) {
    if (!doc.author_keyphrases) continue;
    std::set<std::string> seen;
    for (const auto& a : *doc.author_keyphrases) {
      try {
        seen.insert(normalize(a, tp).text());
      } catch (const ContractViolation&) {
      }
    }
    for (const auto& k : seen) table.counts[k][doc.id] = 1;
  }
  return table;
}

double tfidf_value(int term_frequency, std::size_t word_count, std::size_t df_prime, std::size_t docs_prime) {
  if (word_count == 0) throw ContractViolation("tfidf of an empty document");
  if (df_prime == 0 || docs_prime == 0 || df_prime > docs_prime) {
    throw ContractViolation("tfidf needs 1 <= df' <= N'");
  }
  const double tf = static_cast<double>(term_frequency) / static_cast<double>(word_count);
  const double idf = -std::log2(static_cast<double>(df_prime) / static_cast<double>(docs_prime));
  return tf * idf;
}

double tfidf(const CandidatePhrase& cand, const Document& doc, const CorpusStats& stats) {
  std::size_t df = stats.df(cand.key);
  std::size_t n = stats.document_count;
  if (!stats.contains_document(doc.id)) {
    df += 1;
    n += 1;
  }
  // A document in the stats always contains its own candidates; guard anyway
  // against stats built with a different text processor.
  df = std::max<std::size_t>(df, 1);
  n = std::max(n, df);
  return tfidf_value(cand.term_frequency, doc.word_count, df, n);
}

double distance(const CandidatePhrase& cand, const Document& doc) {
  if (doc.word_count == 0) throw ContractViolation("distance in an empty document");
  return static_cast<double>(cand.first_occurrence_word_index) / static_cast<double>(doc.word_count);
}

int keyphrase_frequency(const NormalizedPhrase& key, const KeyfreqTable& table, const std::string& current_doc_id) {
  auto it = table.counts.find(key.text());
  if (it == table.counts.end()) return 0;
  int total = 0;
  for (const auto& [doc_id, count] : it->second) {
    if (doc_id != current_doc_id) total += count;
  }
  return total;
}

std::size_t discretize(double value, const DiscretizationScheme& scheme) {
  const auto& cuts = scheme.cut_points;
  return static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), value) - cuts.begin());
}

}  // namespace coherex
