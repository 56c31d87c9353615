#include "coherex/hits.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "coherex/error.h"
#include "coherex/simd/kernels.h"

namespace fs = std::filesystem;

namespace coherex {
namespace {

constexpr std::string_view kIndexMagic = "coherex-hits-index";
constexpr int kIndexVersion = 1;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::uint32_t> distinct_pages(const std::vector<std::uint64_t>& occ) {
  std::vector<std::uint32_t> pages;
  for (std::uint64_t k : occ) {
    const auto p = static_cast<std::uint32_t>(k >> 32);
    if (pages.empty() || pages.back() != p) pages.push_back(p);
  }
  return pages;
}

// Pages holding an occurrence of each list no more than kNearWindow apart.
std::uint64_t near_pages(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::uint64_t count = 0;
  std::uint64_t last_page = ~0ull;
  std::size_t j = 0;
  for (std::uint64_t x : a) {
    const std::uint64_t page = x >> 32;
    if (page == last_page) continue;
    const std::uint64_t lo = (x & 0xffffffffull) >= kNearWindow ? x - kNearWindow : (page << 32);
    while (j < b.size() && b[j] < lo) ++j;
    if (j < b.size() && (b[j] >> 32) == page && b[j] <= x + kNearWindow) {
      ++count;
      last_page = page;
    }
  }
  return count;
}

const std::vector<std::uint64_t> kEmpty;

}  // namespace

HitPhrase HitPhrase::Low(std::string_view surface) {
  HitPhrase p;
  p.mode = CaseMode::kLow;
  for (const auto& t : tokenize(surface)) p.words.push_back(to_lower(t.surface));
  return p;
}

HitPhrase HitPhrase::Cap(std::string_view surface) {
  HitPhrase p;
  p.mode = CaseMode::kCap;
  for (const auto& t : tokenize(surface)) p.words.push_back(capitalize_word(t.surface));
  return p;
}

std::string HitPhrase::text() const {
  std::string s = mode == CaseMode::kLow ? "low[" : "cap[";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) s.push_back(' ');
    s += words[i];
  }
  s.push_back(']');
  return s;
}

HitQuery HitQuery::Single(HitPhrase p) { return HitQuery{HitOperator::kSingle, std::move(p), {}}; }
HitQuery HitQuery::Near(HitPhrase a, HitPhrase b) { return HitQuery{HitOperator::kNear, std::move(a), std::move(b)}; }
HitQuery HitQuery::And(HitPhrase a, HitPhrase b) { return HitQuery{HitOperator::kAnd, std::move(a), std::move(b)}; }

std::string HitQuery::canonical() const {
  switch (op) {
    case HitOperator::kSingle:
      return left.text();
    case HitOperator::kNear:
      return left.text() + " NEAR " + right.text();
    case HitOperator::kAnd:
      return left.text() + " AND " + right.text();
  }
  return {};
}

HitsIndex HitsIndex::Build(const Corpus& corpus) {
  if (corpus.documents.empty()) throw DataError("cannot build a hits index from an empty corpus");
  std::vector<Page> pages;
  pages.reserve(corpus.documents.size());
  for (const auto& d : corpus.documents) {
    Page p;
    p.id = d.id;
    for (const auto& t : d.tokens) p.words.push_back(t.surface);
    pages.push_back(std::move(p));
  }
  return FromPages(std::move(pages));
}

HitsIndex HitsIndex::FromPages(std::vector<Page> pages) {
  if (pages.empty()) throw DataError("cannot build a hits index with zero pages");
  HitsIndex idx;
  idx.pages_ = std::move(pages);
  idx.build_postings();
  return idx;
}

void HitsIndex::build_postings() {
  folded_.clear();
  exact_.clear();
  for (std::size_t p = 0; p < pages_.size(); ++p) {
    const auto& words = pages_[p].words;
    for (std::size_t i = 0; i < words.size(); ++i) {
      const std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint64_t>(i);
      folded_[to_lower(words[i])].push_back(key);
      exact_[words[i]].push_back(key);
    }
  }
  fingerprint_ = fnv1a(serialize());
}

const std::vector<std::uint64_t>& HitsIndex::postings(std::string_view folded_word) const {
  auto it = folded_.find(std::string(folded_word));
  return it == folded_.end() ? kEmpty : it->second;
}

std::vector<std::uint64_t> HitsIndex::occurrences(const HitPhrase& phrase) const {
  if (phrase.words.empty()) return {};
  const auto& table = phrase.mode == CaseMode::kLow ? folded_ : exact_;
  auto lookup = [&](std::size_t k) -> const std::vector<std::uint64_t>& {
    auto it = table.find(phrase.words[k]);
    return it == table.end() ? kEmpty : it->second;
  };
  std::vector<std::uint64_t> result = lookup(0);
  std::vector<std::uint64_t> shifted, merged;
  for (std::size_t k = 1; k < phrase.words.size() && !result.empty(); ++k) {
    // Word k of a phrase starting at s sits at s + k; shift it back to s.
    shifted.clear();
    for (std::uint64_t key : lookup(k)) {
      if ((key & 0xffffffffull) >= k) shifted.push_back(key - k);
    }
    merged.resize(std::min(result.size(), shifted.size()));
    merged.resize(simd::intersect_u64(result, shifted, merged.data()));
    result.swap(merged);
  }
  return result;
}

std::uint64_t HitsIndex::count(const HitQuery& q) const {
  const auto left = occurrences(q.left);
  switch (q.op) {
    case HitOperator::kSingle:
      return distinct_pages(left).size();
    case HitOperator::kAnd: {
      const auto right = occurrences(q.right);
      return simd::intersect_count_u32(distinct_pages(left), distinct_pages(right));
    }
    case HitOperator::kNear:
      return near_pages(left, occurrences(q.right));
  }
  return 0;
}

std::string HitsIndex::serialize() const {
  std::ostringstream out;
  out << kIndexMagic << '\t' << kIndexVersion << '\n' << "pages\t" << pages_.size() << '\n';
  for (const auto& p : pages_) {
    out << p.id << '\t';
    for (std::size_t i = 0; i < p.words.size(); ++i) {
      if (i) out << ' ';
      out << p.words[i];
    }
    out << '\n';
  }
  return out.str();
}

void HitsIndex::save(const fs::path& dir) const {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(dir / "index.tsv", std::ios::binary);
  if (!out) throw DataError("cannot write hits index to " + dir.string());
  out << serialize();
  if (!out) throw DataError("error writing hits index to " + dir.string());
}

HitsIndex HitsIndex::Load(const fs::path& dir) {
  const fs::path file = dir / "index.tsv";
  std::ifstream in(file, std::ios::binary);
  if (!in) throw LoadError("cannot read hits index " + file.string());
  std::string line;
  if (!std::getline(in, line)) throw LoadError("empty hits index " + file.string());
  const auto tab = line.find('\t');
  if (tab == std::string::npos || line.substr(0, tab) != kIndexMagic) {
    throw LoadError("not a hits index: " + file.string());
  }
  if (line.substr(tab + 1) != std::to_string(kIndexVersion)) {
    throw LoadError("unsupported hits index version '" + line.substr(tab + 1) + "' in " + file.string());
  }
  std::size_t expected = 0;
  if (!std::getline(in, line) || line.rfind("pages\t", 0) != 0) throw LoadError("corrupt hits index header");
  try {
    expected = std::stoul(line.substr(6));
  } catch (const std::exception&) {
    throw LoadError("corrupt hits index page count");
  }
  std::vector<Page> pages;
  while (std::getline(in, line)) {
    const auto t = line.find('\t');
    if (t == std::string::npos) throw LoadError("corrupt hits index line " + std::to_string(pages.size() + 3));
    Page p;
    p.id = line.substr(0, t);
    std::istringstream words(line.substr(t + 1));
    for (std::string w; words >> w;) p.words.push_back(w);
    pages.push_back(std::move(p));
  }
  if (pages.size() != expected) throw LoadError("truncated hits index " + file.string());
  return FromPages(std::move(pages));
}

std::uint64_t hits(const HitsIndex& index, const HitQuery& q) { return index.count(q); }

double score_low(HitOracle& oracle, std::string_view phrase_i, std::string_view phrase_j) {
  const auto low_i = HitPhrase::Low(phrase_i);
  const std::uint64_t denom = oracle.hits(HitQuery::Single(low_i));
  if (denom == 0) return 0.0;
  const std::uint64_t num = oracle.hits(HitQuery::Near(low_i, HitPhrase::Low(phrase_j)));
  return static_cast<double>(num) / static_cast<double>(denom);
}

double score_cap(HitOracle& oracle, std::string_view phrase_i, std::string_view phrase_j) {
  const auto cap_i = HitPhrase::Cap(phrase_i);
  const std::uint64_t denom = oracle.hits(HitQuery::Single(cap_i));
  if (denom == 0) return 0.0;
  const std::uint64_t num = oracle.hits(HitQuery::And(cap_i, HitPhrase::Low(phrase_j)));
  return static_cast<double>(num) / static_cast<double>(denom);
}

double score_low(const HitsIndex& index, std::string_view phrase_i, std::string_view phrase_j) {
  IndexOracle o(index);
  return score_low(o, phrase_i, phrase_j);
}

double score_cap(const HitsIndex& index, std::string_view phrase_i, std::string_view phrase_j) {
  IndexOracle o(index);
  return score_cap(o, phrase_i, phrase_j);
}

}  // namespace coherex
