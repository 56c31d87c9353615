#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "coherex/text.h"

namespace coherex {
namespace {

// Works on a lower-cased ASCII word. Words with bytes outside a-z are only
// touched where suffix rules happen to match; vowels are a, e, i, o, u and y
// after a consonant.
class PorterWord {
 public:
  explicit PorterWord(std::string w) : w_(std::move(w)) {}

  std::string take() && { return std::move(w_); }

  void step1a() {
    if (ends("sses")) {
      chop(2);
    } else if (ends("ies")) {
      chop(2);
    } else if (ends("ss")) {
      // unchanged
    } else if (ends("s")) {
      chop(1);
    }
  }

  void step1b() {
    if (ends("eed")) {
      if (measure(w_.size() - 3) > 0) chop(1);
      return;
    }
    std::size_t cut = 0;
    if (ends("ed") && has_vowel(w_.size() - 2)) {
      cut = 2;
    } else if (ends("ing") && has_vowel(w_.size() - 3)) {
      cut = 3;
    } else {
      return;
    }
    chop(cut);
    if (ends("at") || ends("bl") || ends("iz")) {
      w_.push_back('e');
    } else if (double_consonant(w_.size())) {
      const char last = w_.back();
      if (last != 'l' && last != 's' && last != 'z') chop(1);
    } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
      w_.push_back('e');
    }
  }

  void step1c() {
    if (ends("y") && has_vowel(w_.size() - 1)) w_.back() = 'i';
  }

  void step2() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 20> kRules{{
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    }};
    apply_first(kRules, 0);
  }

  void step3() {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kRules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_first(kRules, 0);
  }

  void step4() {
    static constexpr std::array<std::string_view, 19> kSuffixes{
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement", "ment",
        "ent", "ion",  "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize"};
    for (std::string_view suffix : kSuffixes) {
      if (!ends(suffix)) continue;
      const std::size_t stem_len = w_.size() - suffix.size();
      bool ok = measure(stem_len) > 1;
      if (ok && suffix == "ion") ok = stem_len > 0 && (w_[stem_len - 1] == 's' || w_[stem_len - 1] == 't');
      if (ok) w_.resize(stem_len);
      return;
    }
  }

  void step5a() {
    if (!ends("e")) return;
    const std::size_t stem_len = w_.size() - 1;
    const int m = measure(stem_len);
    if (m > 1 || (m == 1 && !cvc(stem_len))) chop(1);
  }

  void step5b() {
    if (measure(w_.size()) > 1 && double_consonant(w_.size()) && w_.back() == 'l') chop(1);
  }

 private:
  template <std::size_t N>
  void apply_first(const std::array<std::pair<std::string_view, std::string_view>, N>& rules,
                   int min_measure_exclusive) {
    for (const auto& [suffix, repl] : rules) {
      if (!ends(suffix)) continue;
      const std::size_t stem_len = w_.size() - suffix.size();
      if (measure(stem_len) > min_measure_exclusive) {
        w_.resize(stem_len);
        w_.append(repl);
      }
      return;
    }
  }

  bool ends(std::string_view s) const {
    return w_.size() >= s.size() && std::string_view(w_).substr(w_.size() - s.size()) == s;
  }

  void chop(std::size_t n) { w_.resize(w_.size() - n); }

  bool consonant(std::size_t i) const {
    switch (w_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !consonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in w_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && consonant(i)) ++i;
    while (i < len) {
      while (i < len && !consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && w_[len - 1] == w_[len - 2] && consonant(len - 1);
  }

  // consonant-vowel-consonant ending, last consonant not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!consonant(len - 3) || consonant(len - 2) || !consonant(len - 1)) return false;
    const char c = w_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  std::string w_;
};

}  // namespace

std::string PorterStemmer::stem_lower(std::string_view word) const {
  if (word.empty()) return {};
  PorterWord w{std::string(word)};
  w.step1a();
  w.step1b();
  w.step1c();
  w.step2();
  w.step3();
  w.step4();
  w.step5a();
  w.step5b();
  return std::move(w).take();
}

}  // namespace coherex
