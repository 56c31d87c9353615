#include "coherex/cli.h"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "coherex/error.h"
#include "coherex/eval.h"
#include "coherex/parallel.h"
#include "coherex/pipeline.h"
#include "coherex/simd/kernels.h"

namespace fs = std::filesystem;

namespace coherex::cli {
namespace {

struct Common {
  unsigned jobs = default_jobs();
  bool verbose = false;
};

std::string fmt_prob(double p) {
  std::ostringstream s;
  s << std::setprecision(6) << p;
  return s.str();
}

void log_config(std::ostream& err, const ExtractorConfig& c, unsigned jobs) {
  err << "coherex: feature_set=" << feature_set_name(c.feature_set) << " K=" << c.K << " L=" << c.L
      << " N=" << c.N_default << " stemmer=" << c.stemmer << " stopwords=" << c.stopwords
      << " smoothing=" << c.smoothing << " jobs=" << jobs << " isa=" << simd::isa_name(simd::active_isa()) << '\n';
}

// Holds a loaded hits index plus the optional on-disk cache named by
// COHEREX_CACHE.
class HitsSession {
 public:
  void open(const std::string& dir) {
    index_ = std::make_unique<HitsIndex>(HitsIndex::Load(dir));
    if (const char* c = std::getenv("COHEREX_CACHE"); c && *c) {
      cache_file_ = HitCache::FileFor(c, *index_);
      cache_.load(cache_file_);
    }
  }
  bool is_open() const { return index_ != nullptr; }
  HitsContext context() { return HitsContext{index_.get(), &cache_}; }
  void persist() {
    if (index_ && !cache_file_.empty()) cache_.save(cache_file_);
  }

 private:
  std::unique_ptr<HitsIndex> index_;
  HitCache cache_;
  fs::path cache_file_;
};

std::shared_ptr<const StopwordList> stopwords_for(const std::string& id) {
  ExtractorConfig c;
  c.stopwords = id;
  return resolve_stopwords(c);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"coherex: keyphrase extraction with naive Bayes and hit-count coherence features"};
  app.require_subcommand(1);
  Common common;
  app.add_option("-j,--jobs", common.jobs, "Documents processed in parallel (default: all cores)")
      ->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", common.verbose, "Log progress to stderr");

  // index-hits
  auto* idx_cmd = app.add_subcommand("index-hits", "Build the hit-count index from a corpus directory");
  std::string idx_corpus, idx_out;
  idx_cmd->add_option("corpus", idx_corpus, "Corpus directory (*.txt pages)")->required();
  idx_cmd->add_option("out", idx_out, "Output index directory")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "Train an extractor for one feature set");
  std::string tr_corpus, tr_set = "baseline", tr_out, tr_keyfreq, tr_hits;
  ExtractorConfig tr_cfg;
  train_cmd->add_option("--corpus", tr_corpus, "Training corpus directory")->required();
  train_cmd->add_option("--feature-set", tr_set, "baseline | keyfreq | coherence | merged")->capture_default_str();
  train_cmd->add_option("--keyfreq-corpus", tr_keyfreq, "Corpus for the keyphrase-frequency table");
  train_cmd->add_option("--hits-index", tr_hits, "Hits index directory (coherence, merged)");
  train_cmd->add_option("-K,--K", tr_cfg.K, "Anchor phrases")->capture_default_str();
  train_cmd->add_option("-L,--L", tr_cfg.L, "First-pass candidates kept")->capture_default_str();
  train_cmd->add_option("-N,--N", tr_cfg.N_default, "Default number of output phrases")->capture_default_str();
  train_cmd->add_option("--stemmer", tr_cfg.stemmer, "porter | none")->capture_default_str();
  train_cmd->add_option("--stopwords", tr_cfg.stopwords, "smart or a stopword file")->capture_default_str();
  train_cmd->add_option("--smoothing", tr_cfg.smoothing, "Laplace smoothing constant")->capture_default_str();
  train_cmd->add_flag("--suppress-subphrases", tr_cfg.suppress_subphrases, "Drop phrases inside selected ones");
  train_cmd->add_option("-o,--output", tr_out, "Model file to write")->required();

  // extract
  auto* ext_cmd = app.add_subcommand("extract", "Extract keyphrases from one document");
  std::string ex_model, ex_doc, ex_hits, ex_format = "tsv";
  std::size_t ex_n = 0;
  ext_cmd->add_option("--model", ex_model, "Model file")->required();
  ext_cmd->add_option("--doc", ex_doc, "Document text file")->required();
  ext_cmd->add_option("-n", ex_n, "Number of phrases (default: model's N)");
  ext_cmd->add_option("--hits-index", ex_hits, "Override the model's hits index directory");
  ext_cmd->add_option("--format", ex_format, "tsv | json")->check(CLI::IsMember({"tsv", "json"}));

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Mean matches with author keyphrases for N = 1..N");
  std::string ev_corpus, ev_model, ev_hits, ev_format = "tsv";
  std::size_t ev_n = 20;
  eval_cmd->add_option("--corpus", ev_corpus, "Annotated corpus directory")->required();
  eval_cmd->add_option("--model", ev_model, "Model file")->required();
  eval_cmd->add_option("-N", ev_n, "Largest N")->capture_default_str()->check(CLI::PositiveNumber);
  eval_cmd->add_option("--hits-index", ev_hits, "Override the model's hits index directory");
  eval_cmd->add_option("--format", ev_format, "csv | tsv | json")->check(CLI::IsMember({"csv", "tsv", "json"}));

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "Curves and pairwise paired t-tests across models");
  std::string cmp_corpus, cmp_hits, cmp_format = "csv", cmp_out_dir;
  std::vector<std::string> cmp_models;
  std::size_t cmp_n = 20;
  double cmp_alpha = 0.05;
  cmp_cmd->add_option("--corpus", cmp_corpus, "Annotated corpus directory")->required();
  cmp_cmd->add_option("--models", cmp_models, "Comma-separated model files")->required()->delimiter(',');
  cmp_cmd->add_option("-N", cmp_n, "Largest N")->capture_default_str()->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--alpha", cmp_alpha, "Significance level (two-sided)")->capture_default_str();
  cmp_cmd->add_option("--hits-index", cmp_hits, "Hits index for coherence models");
  cmp_cmd->add_option("--format", cmp_format, "csv | tsv | json")->check(CLI::IsMember({"csv", "tsv", "json"}));
  cmp_cmd->add_option("--out-dir", cmp_out_dir, "Also write curves and significance tables here");

  // dump-candidates
  auto* dc_cmd = app.add_subcommand("dump-candidates", "Print candidate phrases: key, tf, first index, label");
  std::string dc_doc, dc_stemmer = "porter", dc_stop = "smart";
  dc_cmd->add_option("--doc", dc_doc, "Document text file (a .key sidecar supplies labels)")->required();
  dc_cmd->add_option("--stemmer", dc_stemmer, "porter | none")->capture_default_str();
  dc_cmd->add_option("--stopwords", dc_stop, "smart or a stopword file")->capture_default_str();

  // dump-features
  auto* df_cmd = app.add_subcommand("dump-features", "Print the second-pass feature matrix of a document");
  std::string df_model, df_doc, df_hits;
  df_cmd->add_option("--model", df_model, "Model file")->required();
  df_cmd->add_option("--doc", df_doc, "Document text file")->required();
  df_cmd->add_option("--hits-index", df_hits, "Override the model's hits index directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto open_hits = [&](HitsSession& hs, const TrainedExtractor& ex, const std::string& override_dir) {
    if (!uses_coherence(ex.config.feature_set)) return;
    const std::string dir = !override_dir.empty() ? override_dir : ex.config.hits_index.value_or("");
    if (dir.empty()) throw ConfigError("this model needs a hits index (--hits-index)");
    hs.open(dir);
  };

  try {
    if (*idx_cmd) {
      const Corpus corpus = load_corpus(idx_corpus, common.jobs);
      const HitsIndex index = HitsIndex::Build(corpus);
      index.save(idx_out);
      err << "coherex: indexed " << index.page_count() << " pages into " << idx_out << '\n';
      return kExitOk;
    }

    if (*train_cmd) {
      tr_cfg.feature_set = parse_feature_set(tr_set);
      if (!tr_hits.empty()) tr_cfg.hits_index = fs::absolute(tr_hits).string();
      if (!tr_keyfreq.empty()) tr_cfg.keyfreq_corpus = fs::absolute(tr_keyfreq).string();
      tr_cfg.validate();
      log_config(err, tr_cfg, common.jobs);
      const Corpus corpus = load_corpus(tr_corpus, common.jobs);
      TrainOptions opts;
      opts.jobs = common.jobs;
      std::optional<Corpus> keyfreq;
      if (tr_cfg.keyfreq_corpus && uses_keyfreq(tr_cfg.feature_set)) {
        keyfreq = load_corpus(*tr_cfg.keyfreq_corpus, common.jobs);
        opts.keyfreq_corpus = &*keyfreq;
      }
      HitsSession hs;
      if (uses_coherence(tr_cfg.feature_set)) {
        hs.open(*tr_cfg.hits_index);
        opts.hits = hs.context();
      }
      const TrainedExtractor ex = train_extractor(corpus, tr_cfg, opts);
      save_model(ex, tr_out);
      hs.persist();
      if (common.verbose) err << "coherex: trained on " << corpus.documents.size() << " documents\n";
      return kExitOk;
    }

    if (*ext_cmd) {
      const TrainedExtractor ex = load_model(ex_model);
      log_config(err, ex.config, common.jobs);
      HitsSession hs;
      open_hits(hs, ex, ex_hits);
      const Document doc = load_document(ex_doc);
      const std::size_t n = ex_n == 0 ? ex.config.N_default : ex_n;
      const auto phrases = extract_keyphrases(ex, doc, n, hs.context());
      hs.persist();
      if (ex_format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& p : phrases) j.push_back({{"phrase", p.phrase}, {"probability", p.probability}});
        out << j.dump(2) << '\n';
      } else {
        for (const auto& p : phrases) out << p.phrase << '\t' << fmt_prob(p.probability) << '\n';
      }
      return kExitOk;
    }

    if (*eval_cmd) {
      const TrainedExtractor ex = load_model(ev_model);
      log_config(err, ex.config, common.jobs);
      HitsSession hs;
      open_hits(hs, ex, ev_hits);
      const Corpus corpus = load_corpus(ev_corpus, common.jobs);
      const NamedExtractor named{std::string(feature_set_name(ex.config.feature_set)), &ex};
      const auto report =
          compare_feature_sets(corpus, std::span<const NamedExtractor>(&named, 1), ev_n, hs.context(), common.jobs);
      hs.persist();
      if (ev_format == "json") {
        out << report_json(report);
      } else {
        out << curves_table(report, ev_format == "csv" ? ',' : '\t');
      }
      return kExitOk;
    }

    if (*cmp_cmd) {
      std::vector<TrainedExtractor> models;
      for (const auto& m : cmp_models) models.push_back(load_model(m));
      std::vector<NamedExtractor> named;
      std::map<std::string, int> seen;
      for (const auto& m : models) {
        std::string name(feature_set_name(m.config.feature_set));
        if (int k = seen[name]++; k > 0) name += "_" + std::to_string(k + 1);
        named.push_back({name, &m});
      }
      HitsSession hs;
      for (const auto& m : models) {
        if (uses_coherence(m.config.feature_set) && !hs.is_open()) open_hits(hs, m, cmp_hits);
      }
      for (const auto& m : models) log_config(err, m.config, common.jobs);
      const Corpus corpus = load_corpus(cmp_corpus, common.jobs);
      const auto report = compare_feature_sets(corpus, named, cmp_n, hs.context(), common.jobs, cmp_alpha);
      hs.persist();
      const char sep = cmp_format == "tsv" ? '\t' : ',';
      if (cmp_format == "json") {
        out << report_json(report);
      } else {
        out << curves_table(report, sep) << '\n' << significance_table(report, sep);
      }
      if (!cmp_out_dir.empty()) {
        fs::create_directories(cmp_out_dir);
        const std::string ext = cmp_format == "tsv" ? ".tsv" : ".csv";
        std::ofstream(fs::path(cmp_out_dir) / ("curves" + ext)) << curves_table(report, sep);
        std::ofstream(fs::path(cmp_out_dir) / ("significance" + ext)) << significance_table(report, sep);
        std::ofstream(fs::path(cmp_out_dir) / "report.json") << report_json(report);
      }
      return kExitOk;
    }

    if (*dc_cmd) {
      const TextProcessor tp(make_stemmer(dc_stemmer), stopwords_for(dc_stop));
      const Document doc = load_document(dc_doc);
      auto cands = generate_candidates(doc, tp);
      if (doc.author_keyphrases) label_candidates(cands, *doc.author_keyphrases, tp);
      for (const auto& c : cands) {
        out << c.key.text() << '\t' << c.term_frequency << '\t' << c.first_occurrence_word_index << '\t'
            << (c.label ? (*c.label ? "key" : "nonkey") : "-") << '\n';
      }
      return kExitOk;
    }

    if (*df_cmd) {
      const TrainedExtractor ex = load_model(df_model);
      log_config(err, ex.config, common.jobs);
      HitsSession hs;
      open_hits(hs, ex, df_hits);
      const Document doc = load_document(df_doc);
      const auto scoring = score_document(ex, doc, hs.context());
      hs.persist();
      if (uses_coherence(ex.config.feature_set)) {
        out << "phrase";
        for (const auto& n : coherence_feature_names(ex.config.K, ex.config.feature_set == FeatureSet::kMerged)) {
          out << '\t' << n;
        }
        out << '\n';
        for (std::size_t i = 0; i < scoring.coherence.size(); ++i) {
          out << scoring.rows[scoring.first.ranked[i].row].candidate.surface();
          for (double v : scoring.coherence[i].values()) out << '\t' << fmt_prob(v);
          out << '\n';
        }
        err << "coherex: " << scoring.distinct_queries << " distinct hit queries, " << scoring.issued_queries
            << " sent to the index\n";
      } else {
        out << "phrase";
        for (const auto& n : base_feature_names(ex.config.feature_set)) out << '\t' << n;
        out << "\tprobability\n";
        for (const auto& rc : scoring.first.ranked) {
          const auto& row = scoring.rows[rc.row];
          out << row.candidate.surface();
          for (double v : base_feature_values(row, ex.config.feature_set)) out << '\t' << fmt_prob(v);
          out << '\t' << fmt_prob(rc.probability) << '\n';
        }
      }
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "coherex: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const HitOracleError& e) {
    err << "coherex: " << e.what() << '\n';
    return kExitData;
  } catch (const DataError& e) {
    err << "coherex: data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ContractViolation& e) {
    err << "coherex: invalid input: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "coherex: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace coherex::cli
