#include "coherex/text.h"

#include "coherex/error.h"

namespace coherex {
namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_joiner(unsigned char c) { return c == '-' || c == '\''; }

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  const std::size_t n = text.size();
  std::size_t i = 0;
  bool pending_boundary = false;
  int newlines = 0;
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_word_byte(c)) {
      std::size_t j = i + 1;
      for (;;) {
        while (j < n && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
        // A single joiner continues the word only when a word byte follows it.
        if (j + 1 < n && is_joiner(static_cast<unsigned char>(text[j])) &&
            is_word_byte(static_cast<unsigned char>(text[j + 1]))) {
          j += 1;
          continue;
        }
        break;
      }
      Token t;
      t.surface.assign(text.substr(i, j - i));
      t.word_index = out.size();
      t.boundary_before = !out.empty() && pending_boundary;
      out.push_back(std::move(t));
      pending_boundary = false;
      newlines = 0;
      i = j;
      continue;
    }
    if (is_space(c)) {
      if (c == '\n' && ++newlines >= 2) pending_boundary = true;
    } else {
      pending_boundary = true;
    }
    ++i;
  }
  return out;
}

std::string to_lower(std::string_view s) {
  std::string r(s);
  for (char& ch : r) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return r;
}

std::string capitalize_word(std::string_view s) {
  std::string r = to_lower(s);
  if (!r.empty() && r[0] >= 'a' && r[0] <= 'z') r[0] = static_cast<char>(r[0] - 'a' + 'A');
  return r;
}

Document Document::FromText(std::string id, std::string_view raw_text) {
  Document d;
  d.id = std::move(id);
  d.tokens = tokenize(raw_text);
  d.word_count = d.tokens.size();
  return d;
}

std::size_t Corpus::total_words() const {
  std::size_t total = 0;
  for (const auto& d : documents) total += d.word_count;
  return total;
}

std::shared_ptr<const Stemmer> make_stemmer(std::string_view id) {
  if (id == "porter") return std::make_shared<PorterStemmer>();
  if (id == "none") return std::make_shared<IdentityStemmer>();
  throw ConfigError("unknown stemmer '" + std::string(id) + "' (expected porter or none)");
}

TextProcessor::TextProcessor()
    : stemmer_(std::make_shared<PorterStemmer>()),
      stopwords_(std::shared_ptr<const StopwordList>(&StopwordList::Default(), [](const StopwordList*) {})) {}

TextProcessor::TextProcessor(std::shared_ptr<const Stemmer> stemmer,
                             std::shared_ptr<const StopwordList> stopwords)
    : stemmer_(std::move(stemmer)), stopwords_(std::move(stopwords)) {
  if (!stemmer_ || !stopwords_) throw ContractViolation("TextProcessor needs a stemmer and a stopword list");
}

bool is_stopword(std::string_view word) { return StopwordList::Default().contains(word); }

std::string stem(std::string_view word) {
  static const PorterStemmer porter;
  return porter.stem(word);
}

}  // namespace coherex
