#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coherex/bayes.h"
#include "coherex/coherence.h"
#include "coherex/features.h"
#include "coherex/hits.h"
#include "coherex/text.h"

namespace coherex {

inline constexpr int kModelFormatVersion = 1;

struct ExtractorConfig {
  FeatureSet feature_set = FeatureSet::kBaseline;
  std::size_t K = 4;
  std::size_t L = 100;
  std::size_t N_default = 5;
  std::string stemmer = "porter";
  // "smart" for the built-in list, otherwise a path read at training time.
  std::string stopwords = "smart";
  double smoothing = 1.0;
  std::optional<std::string> hits_index;
  std::optional<std::string> keyfreq_corpus;
  // Drop a phrase whose stems sit inside an already selected phrase. Off by
  // default.
  bool suppress_subphrases = false;

  // Throws ConfigError when K >= L, smoothing <= 0, or a required path is
  // missing for the feature set.
  void validate() const;
};

struct PassModel {
  std::vector<DiscretizationScheme> schemes;
  NaiveBayesModel model;
};

struct TrainedExtractor {
  int format_version = kModelFormatVersion;
  ExtractorConfig config;
  // Stopwords actually used, embedded so the model is self-contained.
  std::vector<std::string> stopword_words;
  CorpusStats corpus_stats;
  std::optional<KeyfreqTable> keyfreq_table;
  PassModel first_pass;
  std::optional<PassModel> second_pass;

  TextProcessor text_processor() const;
};

// Hit oracle plumbing for the coherence sets. `cache` may be null.
struct HitsContext {
  const HitsIndex* index = nullptr;
  HitCache* cache = nullptr;
};

struct TrainOptions {
  unsigned jobs = 1;
  // Overrides config.keyfreq_corpus when already loaded.
  const Corpus* keyfreq_corpus = nullptr;
  HitsContext hits;
};

// Builds the stopword list named by the config (and its embedded words).
std::shared_ptr<const StopwordList> resolve_stopwords(const ExtractorConfig& config);

TrainedExtractor train_extractor(const Corpus& train, const ExtractorConfig& config, const TrainOptions& options = {});

// First-pass rows for one document: candidates with labels (when author
// keyphrases are present) and base feature values.
std::vector<CandidateRow> candidate_rows(const TrainedExtractor& ex, const Document& doc);

struct DocumentScoring {
  std::vector<CandidateRow> rows;
  FirstPassRanking first;
  // Coherence sets only, in first-pass order.
  std::vector<CoherenceVector> coherence;
  // Final ordering: (row index, probability), best first.
  std::vector<RankedCandidate> final_order;
  std::size_t distinct_queries = 0;
  std::size_t issued_queries = 0;
};

// Runs both passes as configured. The coherence sets need ctx.index.
DocumentScoring score_document(const TrainedExtractor& ex, const Document& doc, const HitsContext& ctx = {});

struct ExtractedPhrase {
  std::string phrase;
  double probability = 0.0;
};

// Top N candidates, best first. N must be >= 1.
std::vector<ExtractedPhrase> extract_keyphrases(const TrainedExtractor& ex, const Document& doc, std::size_t N,
                                                const HitsContext& ctx = {});

// Model persistence: one JSON document carrying a format version. Loading
// rejects corrupt files and newer versions with LoadError.
void save_model(const TrainedExtractor& ex, const std::filesystem::path& path);
std::string serialize_model(const TrainedExtractor& ex);
TrainedExtractor load_model(const std::filesystem::path& path);
TrainedExtractor parse_model(const std::string& text);

}  // namespace coherex
