#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coherex/text.h"

namespace coherex {

// A 1-3 stem phrase; the matching key for candidates, labels, keyphrase
// frequency and evaluation.
class NormalizedPhrase {
 public:
  NormalizedPhrase() = default;
  // Throws ContractViolation unless 1..3 non-empty stems.
  explicit NormalizedPhrase(std::vector<std::string> stems);

  const std::vector<std::string>& stems() const { return stems_; }
  std::size_t size() const { return stems_.size(); }
  // Stems joined by single spaces.
  std::string text() const;

  auto operator<=>(const NormalizedPhrase&) const = default;
  bool operator==(const NormalizedPhrase&) const = default;

 private:
  std::vector<std::string> stems_;
};

struct CandidatePhrase {
  NormalizedPhrase key;
  std::map<std::string, int> surface_forms;
  int term_frequency = 0;
  std::size_t first_occurrence_word_index = 0;
  // Word index where each surface form first occurs; breaks count ties.
  std::map<std::string, std::size_t> surface_first_index;
  std::optional<bool> label;

  // Most frequent surface form; ties go to the one occurring first.
  const std::string& surface() const;
};

// Every 1-3 token window that does not cross a boundary and neither starts nor
// ends on a stopword. Merged by key; ordered by first occurrence, then length.
std::vector<CandidatePhrase> generate_candidates(const Document& doc, const TextProcessor& tp);
std::vector<CandidatePhrase> generate_candidates(const Document& doc);

// Tokenizes, lower-cases and stems 1-3 words. Throws ContractViolation
// otherwise.
NormalizedPhrase normalize(std::string_view surface_phrase, const TextProcessor& tp);
NormalizedPhrase normalize(std::string_view surface_phrase);

struct LabelDiagnostics {
  std::size_t author_keyphrases = 0;
  // Longer than three words or empty after tokenizing; can never match.
  std::size_t unmatchable = 0;
  // Author keys equal to some candidate key.
  std::size_t matched = 0;
};

LabelDiagnostics label_candidates(std::vector<CandidatePhrase>& cands,
                                  const std::vector<std::string>& author_keyphrases,
                                  const TextProcessor& tp);
LabelDiagnostics label_candidates(std::vector<CandidatePhrase>& cands,
                                  const std::vector<std::string>& author_keyphrases);

}  // namespace coherex
