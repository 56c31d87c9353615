#include "coherex/pipeline.h"

#include <algorithm>

#include "coherex/error.h"
#include "coherex/parallel.h"

namespace coherex {
namespace {

PassModel fit_pass(const std::vector<std::vector<double>>& values, const std::vector<bool>& labels,
                   const std::vector<std::string>& names, double smoothing) {
  const std::size_t arity = names.size();
  PassModel pass;
  std::vector<double> column(values.size());
  std::unique_ptr<bool[]> label_buf(new bool[labels.size()]);
  for (std::size_t i = 0; i < labels.size(); ++i) label_buf[i] = labels[i];
  std::span<const bool> label_span(label_buf.get(), labels.size());
  std::vector<std::size_t> interval_counts;
  for (std::size_t f = 0; f < arity; ++f) {
    for (std::size_t i = 0; i < values.size(); ++i) column[i] = values[i][f];
    pass.schemes.push_back(fit_discretization(column, label_span, names[f]));
    interval_counts.push_back(pass.schemes.back().interval_count());
  }
  pass.model = NaiveBayesModel(names, interval_counts, smoothing);
  LabeledVector v;
  v.intervals.resize(arity);
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t f = 0; f < arity; ++f) v.intervals[f] = static_cast<int>(discretize(values[i][f], pass.schemes[f]));
    v.label = labels[i];
    pass.model.add(v);
  }
  return pass;
}

std::vector<RankedCandidate> rank_with(const PassModel& pass, const std::vector<std::vector<double>>& values,
                                       std::span<const CandidateRow> rows, std::span<const std::size_t> row_of) {
  const std::size_t arity = pass.schemes.size();
  std::vector<int> matrix;
  matrix.reserve(values.size() * arity);
  for (const auto& v : values) {
    for (std::size_t f = 0; f < arity; ++f) matrix.push_back(static_cast<int>(discretize(v[f], pass.schemes[f])));
  }
  const auto probs = values.empty() ? std::vector<double>{} : pass.model.posterior_batch(matrix);
  std::vector<RankedCandidate> out;
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({row_of[i], probs[i]});
  std::sort(out.begin(), out.end(), [&](const RankedCandidate& a, const RankedCandidate& b) {
    return ranks_before(rows[a.row], a.probability, rows[b.row], b.probability);
  });
  return out;
}

bool contains_run(const std::vector<std::string>& outer, const std::vector<std::string>& inner) {
  if (inner.size() > outer.size()) return false;
  for (std::size_t s = 0; s + inner.size() <= outer.size(); ++s) {
    if (std::equal(inner.begin(), inner.end(), outer.begin() + static_cast<std::ptrdiff_t>(s))) return true;
  }
  return false;
}

}  // namespace

void ExtractorConfig::validate() const {
  if (K < 1) throw ConfigError("K must be at least 1");
  if (K >= L) throw ConfigError("K must be smaller than L");
  if (N_default < 1) throw ConfigError("N must be at least 1");
  if (!(smoothing > 0.0)) throw ConfigError("smoothing must be > 0");
  make_stemmer(stemmer);
  if (uses_coherence(feature_set) && (!hits_index || hits_index->empty())) {
    throw ConfigError("feature set '" + std::string(feature_set_name(feature_set)) + "' requires a hits index");
  }
}

std::shared_ptr<const StopwordList> resolve_stopwords(const ExtractorConfig& config) {
  if (config.stopwords == "smart") {
    return std::shared_ptr<const StopwordList>(&StopwordList::Default(), [](const StopwordList*) {});
  }
  return std::make_shared<StopwordList>(StopwordList::FromFile(config.stopwords));
}

TextProcessor TrainedExtractor::text_processor() const {
  std::shared_ptr<const StopwordList> stop;
  if (config.stopwords == "smart") {
    stop = std::shared_ptr<const StopwordList>(&StopwordList::Default(), [](const StopwordList*) {});
  } else {
    stop = std::make_shared<StopwordList>(stopword_words, config.stopwords);
  }
  return TextProcessor(make_stemmer(config.stemmer), std::move(stop));
}

namespace {

std::vector<CandidateRow> rows_for(const TrainedExtractor& ex, const TextProcessor& tp, const Document& doc) {
  auto cands = generate_candidates(doc, tp);
  if (doc.author_keyphrases) label_candidates(cands, *doc.author_keyphrases, tp);
  std::vector<CandidateRow> rows;
  rows.reserve(cands.size());
  for (auto& c : cands) {
    CandidateRow r;
    r.tfidf = tfidf(c, doc, ex.corpus_stats);
    r.distance = distance(c, doc);
    if (ex.keyfreq_table) r.keyphrase_frequency = keyphrase_frequency(c.key, *ex.keyfreq_table, doc.id);
    r.candidate = std::move(c);
    rows.push_back(std::move(r));
  }
  return rows;
}

// Everything after candidate rows: first pass, and for the coherence sets the
// association features and second pass.
DocumentScoring score_rows(const TrainedExtractor& ex, std::vector<CandidateRow> rows, const HitsContext& ctx,
                           bool need_final) {
  const auto& cfg = ex.config;
  const FeatureSet first_set = first_pass_set(cfg.feature_set);
  DocumentScoring out;
  out.rows = std::move(rows);
  if (!uses_coherence(cfg.feature_set)) {
    // Single pass: every candidate is eligible.
    const std::size_t L = std::max(out.rows.size(), cfg.K + 1);
    out.first = first_pass(out.rows, ex.first_pass.model, ex.first_pass.schemes, first_set, cfg.K, L);
    out.first.L = cfg.L;
    if (need_final) out.final_order = out.first.ranked;
    return out;
  }
  out.first = first_pass(out.rows, ex.first_pass.model, ex.first_pass.schemes, first_set, cfg.K, cfg.L);
  if (out.first.ranked.empty()) return out;
  if (!ctx.index) throw ConfigError("the " + std::string(feature_set_name(cfg.feature_set)) + " set needs a hits index");
  IndexOracle backend(*ctx.index);
  HitCache local_cache;
  CachedHits session(ctx.cache ? *ctx.cache : local_cache, backend);
  const auto assoc = association_features(out.first, out.rows, session);
  out.distinct_queries = session.distinct_queries();
  out.issued_queries = session.issued_queries();
  out.coherence = assemble(out.first, out.rows, assoc, cfg.feature_set == FeatureSet::kMerged);
  if (need_final) {
    if (!ex.second_pass) throw ContractViolation("coherence extractor without a second-pass model");
    std::vector<std::vector<double>> values;
    std::vector<std::size_t> row_of;
    for (std::size_t i = 0; i < out.coherence.size(); ++i) {
      values.push_back(out.coherence[i].values());
      row_of.push_back(out.first.ranked[i].row);
    }
    out.final_order = rank_with(*ex.second_pass, values, out.rows, row_of);
  }
  return out;
}

}  // namespace

std::vector<CandidateRow> candidate_rows(const TrainedExtractor& ex, const Document& doc) {
  return rows_for(ex, ex.text_processor(), doc);
}

DocumentScoring score_document(const TrainedExtractor& ex, const Document& doc, const HitsContext& ctx) {
  return score_rows(ex, candidate_rows(ex, doc), ctx, true);
}

std::vector<ExtractedPhrase> extract_keyphrases(const TrainedExtractor& ex, const Document& doc, std::size_t N,
                                                const HitsContext& ctx) {
  if (N < 1) throw ContractViolation("extract_keyphrases needs N >= 1");
  const auto scoring = score_document(ex, doc, ctx);
  std::vector<ExtractedPhrase> out;
  std::vector<const std::vector<std::string>*> chosen;
  for (const auto& rc : scoring.final_order) {
    if (out.size() >= N) break;
    const auto& cand = scoring.rows[rc.row].candidate;
    if (ex.config.suppress_subphrases) {
      const bool inside = std::any_of(chosen.begin(), chosen.end(),
                                      [&](const auto* stems) { return contains_run(*stems, cand.key.stems()); });
      if (inside) continue;
      chosen.push_back(&cand.key.stems());
    }
    out.push_back({cand.surface(), rc.probability});
  }
  return out;
}

TrainedExtractor train_extractor(const Corpus& train, const ExtractorConfig& config, const TrainOptions& options) {
  config.validate();
  if (train.documents.empty()) throw DataError("training corpus is empty");
  for (const auto& d : train.documents) {
    if (!d.author_keyphrases) throw DataError("training document '" + d.id + "' has no author keyphrases");
  }
  const bool coherent = uses_coherence(config.feature_set);
  if (coherent && !options.hits.index) throw ConfigError("training a coherence set needs a loaded hits index");

  TrainedExtractor ex;
  ex.config = config;
  const auto stop = resolve_stopwords(config);
  if (config.stopwords != "smart") ex.stopword_words = stop->sorted_words();
  const TextProcessor tp(make_stemmer(config.stemmer), stop);
  ex.corpus_stats = CorpusStats::Build(train, tp, options.jobs);
  if (uses_keyfreq(config.feature_set)) {
    const Corpus* kf = options.keyfreq_corpus ? options.keyfreq_corpus : &train;
    ex.keyfreq_table = KeyfreqTable::Build(*kf, tp);
  }

  std::vector<std::vector<CandidateRow>> per_doc(train.documents.size());
  parallel_for(train.documents.size(), options.jobs,
               [&](std::size_t i) { per_doc[i] = rows_for(ex, tp, train.documents[i]); });

  const FeatureSet first_set = first_pass_set(config.feature_set);
  {
    std::vector<std::vector<double>> values;
    std::vector<bool> labels;
    for (const auto& rows : per_doc) {
      for (const auto& r : rows) {
        values.push_back(base_feature_values(r, first_set));
        labels.push_back(r.candidate.label.value_or(false));
      }
    }
    if (values.empty()) throw DataError("training corpus yields no candidate phrases");
    ex.first_pass = fit_pass(values, labels, base_feature_names(first_set), config.smoothing);
  }

  if (coherent) {
    std::vector<DocumentScoring> scored(per_doc.size());
    parallel_for(per_doc.size(), options.jobs,
                 [&](std::size_t i) { scored[i] = score_rows(ex, std::move(per_doc[i]), options.hits, false); });
    std::vector<std::vector<double>> values;
    std::vector<bool> labels;
    for (const auto& s : scored) {
      for (std::size_t i = 0; i < s.coherence.size(); ++i) {
        values.push_back(s.coherence[i].values());
        labels.push_back(s.rows[s.first.ranked[i].row].candidate.label.value_or(false));
      }
    }
    if (values.empty()) throw DataError("no first-pass candidates to train the second pass on");
    ex.second_pass =
        fit_pass(values, labels, coherence_feature_names(config.K, config.feature_set == FeatureSet::kMerged),
                 config.smoothing);
  }
  return ex;
}

}  // namespace coherex
