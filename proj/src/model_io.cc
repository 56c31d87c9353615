#include <fstream>
#include <sstream>

#include <json.hpp>

#include "coherex/error.h"
#include "coherex/pipeline.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace coherex {
namespace {

json pass_to_json(const PassModel& pass) {
  json schemes = json::array();
  for (const auto& s : pass.schemes) schemes.push_back({{"feature", s.feature_name}, {"cut_points", s.cut_points}});
  const auto counts = pass.model.counts();
  json conditional = json::array();
  for (const auto& feature : counts.conditional) {
    json rows = json::array();
    for (const auto& cell : feature) rows.push_back({cell[0], cell[1]});
    conditional.push_back(std::move(rows));
  }
  json feature_classes = json::array();
  for (const auto& fc : counts.feature_classes) feature_classes.push_back({fc[0], fc[1]});
  return {
      {"schemes", std::move(schemes)},
      {"model",
       {{"feature_names", pass.model.feature_names()},
        {"smoothing", pass.model.smoothing()},
        {"class_counts", {counts.classes[0], counts.classes[1]}},
        {"feature_class_counts", std::move(feature_classes)},
        {"conditional_counts", std::move(conditional)}}},
  };
}

std::array<long, 2> pair_of(const json& j) {
  if (!j.is_array() || j.size() != 2) throw LoadError("model file: expected a [nonkey, key] count pair");
  return {j.at(0).get<long>(), j.at(1).get<long>()};
}

PassModel pass_from_json(const json& j) {
  PassModel pass;
  for (const auto& s : j.at("schemes")) {
    DiscretizationScheme scheme;
    scheme.feature_name = s.at("feature").get<std::string>();
    scheme.cut_points = s.at("cut_points").get<std::vector<double>>();
    if (!std::is_sorted(scheme.cut_points.begin(), scheme.cut_points.end()) ||
        std::adjacent_find(scheme.cut_points.begin(), scheme.cut_points.end()) != scheme.cut_points.end()) {
      throw LoadError("model file: cut points of '" + scheme.feature_name + "' are not strictly increasing");
    }
    pass.schemes.push_back(std::move(scheme));
  }
  const json& m = j.at("model");
  NaiveBayesModel::Counts counts;
  counts.classes = pair_of(m.at("class_counts"));
  for (const auto& fc : m.at("feature_class_counts")) counts.feature_classes.push_back(pair_of(fc));
  for (const auto& feature : m.at("conditional_counts")) {
    std::vector<std::array<long, 2>> rows;
    for (const auto& cell : feature) rows.push_back(pair_of(cell));
    counts.conditional.push_back(std::move(rows));
  }
  auto names = m.at("feature_names").get<std::vector<std::string>>();
  if (names.size() != pass.schemes.size() || counts.conditional.size() != names.size()) {
    throw LoadError("model file: scheme count does not match model arity");
  }
  for (std::size_t f = 0; f < names.size(); ++f) {
    if (counts.conditional[f].size() != pass.schemes[f].interval_count()) {
      throw LoadError("model file: interval count mismatch for feature '" + names[f] + "'");
    }
  }
  try {
    pass.model = NaiveBayesModel::FromCounts(std::move(names), std::move(counts), m.at("smoothing").get<double>());
  } catch (const ContractViolation& e) {
    throw LoadError(std::string("model file: ") + e.what());
  }
  return pass;
}

json config_to_json(const ExtractorConfig& c) {
  return {
      {"feature_set", std::string(feature_set_name(c.feature_set))},
      {"K", c.K},
      {"L", c.L},
      {"N_default", c.N_default},
      {"stemmer", c.stemmer},
      {"stopwords", c.stopwords},
      {"smoothing", c.smoothing},
      {"hits_index", c.hits_index ? json(*c.hits_index) : json(nullptr)},
      {"keyfreq_corpus", c.keyfreq_corpus ? json(*c.keyfreq_corpus) : json(nullptr)},
      {"suppress_subphrases", c.suppress_subphrases},
  };
}

ExtractorConfig config_from_json(const json& j) {
  ExtractorConfig c;
  c.feature_set = parse_feature_set(j.at("feature_set").get<std::string>());
  c.K = j.at("K").get<std::size_t>();
  c.L = j.at("L").get<std::size_t>();
  c.N_default = j.at("N_default").get<std::size_t>();
  c.stemmer = j.at("stemmer").get<std::string>();
  c.stopwords = j.at("stopwords").get<std::string>();
  c.smoothing = j.at("smoothing").get<double>();
  if (!j.at("hits_index").is_null()) c.hits_index = j.at("hits_index").get<std::string>();
  if (!j.at("keyfreq_corpus").is_null()) c.keyfreq_corpus = j.at("keyfreq_corpus").get<std::string>();
  c.suppress_subphrases = j.at("suppress_subphrases").get<bool>();
  return c;
}

}  // namespace

std::string serialize_model(const TrainedExtractor& ex) {
  json j;
  j["format"] = "coherex-model";
  j["format_version"] = ex.format_version;
  j["config"] = config_to_json(ex.config);
  j["stopword_words"] = ex.stopword_words;
  j["corpus_stats"] = {
      {"document_count", ex.corpus_stats.document_count},
      {"document_ids", ex.corpus_stats.document_ids},
      {"doc_frequency", ex.corpus_stats.doc_frequency},
  };
  j["keyfreq_table"] = ex.keyfreq_table ? json(ex.keyfreq_table->counts) : json(nullptr);
  j["first_pass"] = pass_to_json(ex.first_pass);
  j["second_pass"] = ex.second_pass ? pass_to_json(*ex.second_pass) : json(nullptr);
  return j.dump(1) + "\n";
}

void save_model(const TrainedExtractor& ex, const fs::path& path) {
  const std::string text = serialize_model(ex);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot write model " + path.string());
    out << text;
    if (!out) throw DataError("error writing model " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw DataError("cannot move model into place: " + path.string());
}

TrainedExtractor parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw LoadError(std::string("model file is not valid JSON (truncated or corrupt): ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", "") != "coherex-model") throw LoadError("not a coherex model file");
    const int version = j.at("format_version").get<int>();
    if (version > kModelFormatVersion) {
      throw LoadError("model format version " + std::to_string(version) + " is newer than supported version " +
                      std::to_string(kModelFormatVersion));
    }
    if (version < 1) throw LoadError("invalid model format version " + std::to_string(version));
    TrainedExtractor ex;
    ex.format_version = version;
    ex.config = config_from_json(j.at("config"));
    ex.stopword_words = j.at("stopword_words").get<std::vector<std::string>>();
    const json& st = j.at("corpus_stats");
    ex.corpus_stats.document_count = st.at("document_count").get<std::size_t>();
    ex.corpus_stats.document_ids = st.at("document_ids").get<std::set<std::string>>();
    ex.corpus_stats.doc_frequency = st.at("doc_frequency").get<std::map<std::string, std::size_t>>();
    if (!j.at("keyfreq_table").is_null()) {
      KeyfreqTable t;
      t.counts = j.at("keyfreq_table").get<std::map<std::string, std::map<std::string, int>>>();
      ex.keyfreq_table = std::move(t);
    }
    ex.first_pass = pass_from_json(j.at("first_pass"));
    if (!j.at("second_pass").is_null()) ex.second_pass = pass_from_json(j.at("second_pass"));

    const auto fs_ = ex.config.feature_set;
    if (ex.first_pass.schemes.size() != base_feature_names(fs_).size()) {
      throw LoadError("model file: first-pass arity does not match feature set");
    }
    if (uses_coherence(fs_) != ex.second_pass.has_value()) {
      throw LoadError("model file: second pass presence does not match feature set");
    }
    if (ex.second_pass &&
        ex.second_pass->schemes.size() != coherence_feature_names(ex.config.K, fs_ == FeatureSet::kMerged).size()) {
      throw LoadError("model file: second-pass arity does not match 4+2K");
    }
    if (uses_keyfreq(fs_) != ex.keyfreq_table.has_value()) {
      throw LoadError("model file: keyphrase-frequency table presence does not match feature set");
    }
    return ex;
  } catch (const json::exception& e) {
    throw LoadError(std::string("model file is missing or has malformed fields: ") + e.what());
  } catch (const ConfigError& e) {
    throw LoadError(std::string("model file has an invalid configuration: ") + e.what());
  }
}

TrainedExtractor load_model(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read model " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

}  // namespace coherex
