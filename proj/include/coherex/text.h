#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace coherex {

struct Token {
  std::string surface;
  std::size_t word_index = 0;
  // Punctuation or a paragraph break sits between this token and the previous one.
  bool boundary_before = false;

  bool operator==(const Token&) const = default;
};

struct Document {
  std::string id;
  std::vector<Token> tokens;
  std::size_t word_count = 0;
  std::optional<std::vector<std::string>> author_keyphrases;

  static Document FromText(std::string id, std::string_view raw_text);
};

struct Corpus {
  std::string name;
  std::vector<Document> documents;

  std::size_t total_words() const;
};

// Splits UTF-8 text into words: maximal runs of letters and digits, joined by
// single internal hyphens or apostrophes. Bytes >= 0x80 count as letters.
// Any other non-space character, or a blank line, marks the next token with
// boundary_before. Case is preserved.
std::vector<Token> tokenize(std::string_view raw_text);

// ASCII case folding; non-ASCII bytes pass through untouched.
std::string to_lower(std::string_view s);

// First character upper-cased, the rest lower-cased.
std::string capitalize_word(std::string_view s);

class StopwordList {
 public:
  // The built-in SMART-style English list.
  static const StopwordList& Default();
  // One word per line; blank lines and lines starting with '#' are skipped.
  static StopwordList FromFile(const std::filesystem::path& path);
  explicit StopwordList(const std::vector<std::string>& words, std::string id = "custom");

  bool contains(std::string_view word) const;
  const std::string& id() const { return id_; }
  std::size_t size() const { return words_.size(); }
  std::vector<std::string> sorted_words() const;

 private:
  std::unordered_set<std::string> words_;
  std::string id_;
};

class Stemmer {
 public:
  virtual ~Stemmer() = default;
  // Input is already lower-cased.
  virtual std::string stem_lower(std::string_view word) const = 0;
  virtual std::string id() const = 0;

  std::string stem(std::string_view word) const { return stem_lower(to_lower(word)); }
};

// Porter (1980), original algorithm without the later reference-code departures.
class PorterStemmer final : public Stemmer {
 public:
  std::string stem_lower(std::string_view word) const override;
  std::string id() const override { return "porter"; }
};

// Lower-casing only.
class IdentityStemmer final : public Stemmer {
 public:
  std::string stem_lower(std::string_view word) const override { return std::string(word); }
  std::string id() const override { return "none"; }
};

// Throws ConfigError for unknown ids. Known ids: "porter", "none".
std::shared_ptr<const Stemmer> make_stemmer(std::string_view id);

// Stopword test plus stemmer; shared by candidate generation, labelling and
// evaluation so they all agree on what a phrase key is.
class TextProcessor {
 public:
  TextProcessor();
  TextProcessor(std::shared_ptr<const Stemmer> stemmer, std::shared_ptr<const StopwordList> stopwords);

  bool is_stopword(std::string_view word) const { return stopwords_->contains(word); }
  std::string stem(std::string_view word) const { return stemmer_->stem(word); }

  const Stemmer& stemmer() const { return *stemmer_; }
  const StopwordList& stopwords() const { return *stopwords_; }

 private:
  std::shared_ptr<const Stemmer> stemmer_;
  std::shared_ptr<const StopwordList> stopwords_;
};

// Convenience wrappers over the default processor.
bool is_stopword(std::string_view word);
std::string stem(std::string_view word);

// Reads <name>.txt bodies and optional <name>.key sidecars from a directory.
// Documents are ordered by id. Throws DataError on unreadable files or on a
// sidecar with no matching body. Files are read with up to `jobs` threads.
Corpus load_corpus(const std::filesystem::path& dir, unsigned jobs = 1);

// Reads one document body (and its sidecar, if present next to it).
Document load_document(const std::filesystem::path& txt_path);

// Sidecar parsing: one phrase per line, CRLF tolerated, blank lines ignored.
std::vector<std::string> parse_keyphrase_lines(std::string_view content);

}  // namespace coherex
