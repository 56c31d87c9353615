#pragma once

// Brute-force reference implementations used only by tests. They share no
// code paths with the library beyond the tokenizer and stemmer they are fed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coherex/text.h"

namespace oracle {

// ---- candidate windows ------------------------------------------------------

struct WindowStats {
  int count = 0;
  std::size_t first = 0;
};

inline std::string lower_ascii(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Every (start, length) window, filtered by the rules, keyed by joined stems.
inline std::map<std::string, WindowStats> enumerate_windows(const std::vector<coherex::Token>& toks,
                                                            const std::set<std::string>& stopwords,
                                                            const coherex::Stemmer& stemmer) {
  std::map<std::string, WindowStats> out;
  for (std::size_t s = 0; s < toks.size(); ++s) {
    for (std::size_t len = 1; len <= 3; ++len) {
      if (s + len > toks.size()) continue;
      bool crosses = false;
      for (std::size_t k = s + 1; k < s + len; ++k) crosses = crosses || toks[k].boundary_before;
      if (crosses) continue;
      if (stopwords.count(lower_ascii(toks[s].surface))) continue;
      if (stopwords.count(lower_ascii(toks[s + len - 1].surface))) continue;
      std::string key;
      for (std::size_t k = s; k < s + len; ++k) {
        if (k > s) key += ' ';
        key += stemmer.stem(toks[k].surface);
      }
      auto [it, inserted] = out.try_emplace(key, WindowStats{0, s});
      it->second.count += 1;
      it->second.first = std::min(it->second.first, s);
    }
  }
  return out;
}

// ---- MDL discretization ------------------------------------------------------

inline double entropy2(std::size_t p, std::size_t n) {
  const std::size_t t = p + n;
  if (t == 0 || p == 0 || n == 0) return 0.0;
  const double a = static_cast<double>(p) / static_cast<double>(t);
  const double b = static_cast<double>(n) / static_cast<double>(t);
  return -(a * std::log2(a) + b * std::log2(b));
}

struct Item {
  double v;
  bool y;
};

// Exhaustive: every midpoint between distinct values is examined, class counts
// are recounted from scratch, and the boundary-point filter is checked by
// scanning the items on each side.
inline void mdl_recurse(const std::vector<Item>& items, std::vector<double>& cuts) {
  std::set<double> distinct;
  for (const auto& it : items) distinct.insert(it.v);
  if (distinct.size() < 2) return;
  std::vector<double> dv(distinct.begin(), distinct.end());
  std::size_t P = 0, N = 0;
  for (const auto& it : items) (it.y ? P : N)++;
  const std::size_t total = P + N;
  const double parent = entropy2(P, N);

  bool found = false;
  double best_cut = 0, best_e = 0, best_e1 = 0, best_e2 = 0;
  std::size_t bp1 = 0, bn1 = 0;
  for (std::size_t g = 0; g + 1 < dv.size(); ++g) {
    // classes present exactly at dv[g] and dv[g+1]
    std::set<bool> left_cls, right_cls;
    for (const auto& it : items) {
      if (it.v == dv[g]) left_cls.insert(it.y);
      if (it.v == dv[g + 1]) right_cls.insert(it.y);
    }
    if (left_cls.size() == 1 && right_cls.size() == 1 && *left_cls.begin() == *right_cls.begin()) continue;
    const double cut = (dv[g] + dv[g + 1]) / 2.0;
    std::size_t p1 = 0, n1 = 0;
    for (const auto& it : items) {
      if (it.v <= dv[g]) (it.y ? p1 : n1)++;
    }
    const std::size_t p2 = P - p1, n2 = N - n1;
    const double e1 = entropy2(p1, n1), e2 = entropy2(p2, n2);
    const double e = (static_cast<double>(p1 + n1) * e1 + static_cast<double>(p2 + n2) * e2) / static_cast<double>(total);
    if (!found || e < best_e) {
      found = true;
      best_cut = cut;
      best_e = e;
      best_e1 = e1;
      best_e2 = e2;
      bp1 = p1;
      bn1 = n1;
    }
  }
  if (!found) return;
  auto classes = [](std::size_t p, std::size_t n) { return (p ? 1 : 0) + (n ? 1 : 0); };
  const int k = classes(P, N), k1 = classes(bp1, bn1), k2 = classes(P - bp1, N - bn1);
  const double gain = parent - best_e;
  const double delta = std::log2(std::pow(3.0, k) - 2.0) - (k * parent - k1 * best_e1 - k2 * best_e2);
  if (!(gain > (std::log2(static_cast<double>(total - 1)) + delta) / static_cast<double>(total))) return;
  std::vector<Item> left, right;
  for (const auto& it : items) (it.v < best_cut ? left : right).push_back(it);
  mdl_recurse(left, cuts);
  cuts.push_back(best_cut);
  mdl_recurse(right, cuts);
}

inline std::vector<double> mdl_cuts(const std::vector<double>& v, const std::vector<bool>& y) {
  std::vector<Item> items;
  for (std::size_t i = 0; i < v.size(); ++i) items.push_back({v[i], y[i]});
  std::vector<double> cuts;
  mdl_recurse(items, cuts);
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

// ---- naive Bayes joint table ------------------------------------------------

// counts[f][interval][class], class_counts[class]; per-feature class totals
// taken as the column sums of counts[f].
inline double nb_posterior(const std::vector<std::vector<std::array<long, 2>>>& counts,
                           const std::array<long, 2>& class_counts, double s, const std::vector<int>& x) {
  double joint[2];
  for (int c = 0; c < 2; ++c) {
    double prior = (class_counts[c] + s) / (class_counts[0] + class_counts[1] + 2 * s);
    double prod = prior;
    for (std::size_t f = 0; f < counts.size(); ++f) {
      long col = 0;
      for (const auto& cell : counts[f]) col += cell[c];
      const int xi = std::clamp(x[f], 0, static_cast<int>(counts[f].size()) - 1);
      prod *= (counts[f][xi][c] + s) / (col + s * counts[f].size());
    }
    joint[c] = prod;
  }
  return joint[1] / (joint[0] + joint[1]);
}

// ---- hit counting -------------------------------------------------------------

inline std::string cap_word(const std::string& w) {
  std::string r = lower_ascii(w);
  if (!r.empty()) r[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(r[0])));
  return r;
}

// Start positions where `phrase` (already rendered) matches the page.
inline std::vector<std::size_t> phrase_starts(const std::vector<std::string>& page,
                                              const std::vector<std::string>& phrase, bool cap) {
  std::vector<std::size_t> out;
  if (phrase.empty()) return out;
  for (std::size_t s = 0; s + phrase.size() <= page.size(); ++s) {
    bool ok = true;
    for (std::size_t k = 0; k < phrase.size() && ok; ++k) {
      ok = cap ? page[s + k] == phrase[k] : lower_ascii(page[s + k]) == lower_ascii(phrase[k]);
    }
    if (ok) out.push_back(s);
  }
  return out;
}

struct ScanPhrase {
  std::vector<std::string> words;
  bool cap = false;
};

inline std::uint64_t scan_single(const std::vector<std::vector<std::string>>& pages, const ScanPhrase& p) {
  std::uint64_t n = 0;
  for (const auto& pg : pages) n += phrase_starts(pg, p.words, p.cap).empty() ? 0 : 1;
  return n;
}

inline std::uint64_t scan_and(const std::vector<std::vector<std::string>>& pages, const ScanPhrase& a,
                              const ScanPhrase& b) {
  std::uint64_t n = 0;
  for (const auto& pg : pages) {
    n += (!phrase_starts(pg, a.words, a.cap).empty() && !phrase_starts(pg, b.words, b.cap).empty()) ? 1 : 0;
  }
  return n;
}

inline std::uint64_t scan_near(const std::vector<std::vector<std::string>>& pages, const ScanPhrase& a,
                               const ScanPhrase& b, long window = 10) {
  std::uint64_t n = 0;
  for (const auto& pg : pages) {
    bool hit = false;
    for (auto x : phrase_starts(pg, a.words, a.cap)) {
      for (auto y : phrase_starts(pg, b.words, b.cap)) {
        if (std::labs(static_cast<long>(x) - static_cast<long>(y)) <= window) hit = true;
      }
    }
    n += hit ? 1 : 0;
  }
  return n;
}

// ---- percentiles --------------------------------------------------------------

// Percentile of each score via explicit counting of smaller and equal entries.
inline std::vector<double> percentiles(const std::vector<double>& s) {
  const std::size_t n = s.size();
  std::vector<double> out(n);
  if (n == 1) return {1.0};
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t less = 0, equal = 0;
    for (double v : s) {
      less += v < s[i];
      equal += v == s[i];
    }
    out[i] = (static_cast<double>(less) + static_cast<double>(equal - 1) / 2.0) / static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace oracle
