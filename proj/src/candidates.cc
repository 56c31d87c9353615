#include "coherex/candidates.h"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "coherex/error.h"

namespace coherex {

NormalizedPhrase::NormalizedPhrase(std::vector<std::string> stems) : stems_(std::move(stems)) {
  if (stems_.empty() || stems_.size() > 3) throw ContractViolation("a normalized phrase has 1 to 3 stems");
  for (const auto& s : stems_) {
    if (s.empty()) throw ContractViolation("empty stem in normalized phrase");
  }
}

std::string NormalizedPhrase::text() const {
  std::string out;
  for (std::size_t i = 0; i < stems_.size(); ++i) {
    if (i) out.push_back(' ');
    out += stems_[i];
  }
  return out;
}

const std::string& CandidatePhrase::surface() const {
  const std::string* best = nullptr;
  int best_count = -1;
  std::size_t best_first = 0;
  for (const auto& [form, count] : surface_forms) {
    const std::size_t first = surface_first_index.at(form);
    if (count > best_count || (count == best_count && first < best_first)) {
      best = &form;
      best_count = count;
      best_first = first;
    }
  }
  if (!best) throw ContractViolation("candidate without surface forms");
  return *best;
}

std::vector<CandidatePhrase> generate_candidates(const Document& doc, const TextProcessor& tp) {
  const auto& toks = doc.tokens;
  std::vector<std::string> stems(toks.size());
  std::vector<char> stop(toks.size());
  for (std::size_t i = 0; i < toks.size(); ++i) {
    stems[i] = tp.stem(toks[i].surface);
    stop[i] = tp.is_stopword(toks[i].surface);
  }
  std::vector<CandidatePhrase> out;
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (stop[i]) continue;
    for (std::size_t len = 1; len <= 3 && i + len <= toks.size(); ++len) {
      const std::size_t last = i + len - 1;
      if (len > 1 && toks[last].boundary_before) break;
      if (stop[last]) continue;
      std::vector<std::string> key_stems(stems.begin() + i, stems.begin() + i + len);
      std::string surface = toks[i].surface;
      for (std::size_t k = i + 1; k <= last; ++k) surface += " " + toks[k].surface;
      NormalizedPhrase key(std::move(key_stems));
      auto [it, inserted] = slot.emplace(key.text(), out.size());
      if (inserted) {
        CandidatePhrase c;
        c.key = std::move(key);
        c.first_occurrence_word_index = i;
        out.push_back(std::move(c));
      }
      CandidatePhrase& c = out[it->second];
      c.term_frequency += 1;
      c.surface_forms[surface] += 1;
      c.surface_first_index.emplace(surface, i);
    }
  }
  return out;
}

std::vector<CandidatePhrase> generate_candidates(const Document& doc) {
  static const TextProcessor tp;
  return generate_candidates(doc, tp);
}

NormalizedPhrase normalize(std::string_view surface_phrase, const TextProcessor& tp) {
  const auto toks = tokenize(surface_phrase);
  if (toks.empty() || toks.size() > 3) {
    throw ContractViolation("cannot normalize '" + std::string(surface_phrase) + "': need 1 to 3 words");
  }
  std::vector<std::string> stems;
  for (const auto& t : toks) stems.push_back(tp.stem(t.surface));
  return NormalizedPhrase(std::move(stems));
}

NormalizedPhrase normalize(std::string_view surface_phrase) {
  static const TextProcessor tp;
  return normalize(surface_phrase, tp);
}

LabelDiagnostics label_candidates(std::vector<CandidatePhrase>& cands,
                                  const std::vector<std::string>& author_keyphrases,
                                  const TextProcessor& tp) {
  LabelDiagnostics diag;
  std::set<NormalizedPhrase> keys;
  for (const auto& a : author_keyphrases) {
    ++diag.author_keyphrases;
    try {
      keys.insert(normalize(a, tp));
    } catch (const ContractViolation&) {
      ++diag.unmatchable;
    }
  }
  std::set<NormalizedPhrase> hit;
  for (auto& c : cands) {
    const bool positive = keys.count(c.key) != 0;
    c.label = positive;
    if (positive) hit.insert(c.key);
  }
  diag.matched = hit.size();
  return diag;
}

LabelDiagnostics label_candidates(std::vector<CandidatePhrase>& cands,
                                  const std::vector<std::string>& author_keyphrases) {
  static const TextProcessor tp;
  return label_candidates(cands, author_keyphrases, tp);
}

}  // namespace coherex
