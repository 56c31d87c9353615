#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coherex/text.h"

namespace coherex {

// low: case-insensitive. cap: exact match on each word rendered with an
// upper-case first character and the rest lower-case.
enum class CaseMode { kLow, kCap };

struct HitPhrase {
  std::vector<std::string> words;
  CaseMode mode = CaseMode::kLow;

  // Splits with the text tokenizer and renders words for `mode`.
  static HitPhrase Low(std::string_view surface);
  static HitPhrase Cap(std::string_view surface);
  std::string text() const;
};

enum class HitOperator { kSingle, kNear, kAnd };

struct HitQuery {
  HitOperator op = HitOperator::kSingle;
  HitPhrase left;
  HitPhrase right;  // unused for kSingle

  static HitQuery Single(HitPhrase p);
  static HitQuery Near(HitPhrase a, HitPhrase b);
  static HitQuery And(HitPhrase a, HitPhrase b);

  // Stable text form; the cache key.
  std::string canonical() const;
};

// NEAR: phrase starts at most this many words apart, either order.
inline constexpr std::uint32_t kNearWindow = 10;

// Anything that can count pages matching a query.
class HitOracle {
 public:
  virtual ~HitOracle() = default;
  virtual std::uint64_t hits(const HitQuery& q) = 0;
};

// Positional index over a page collection standing in for a web search engine.
// Occurrences are keyed page << 32 | position so phrase matching reduces to
// sorted-list intersection.
class HitsIndex {
 public:
  struct Page {
    std::string id;
    std::vector<std::string> words;
  };

  // Throws DataError for an empty corpus.
  static HitsIndex Build(const Corpus& corpus);
  static HitsIndex FromPages(std::vector<Page> pages);

  // Writes <dir>/index.tsv. Throws DataError on I/O failure.
  void save(const std::filesystem::path& dir) const;
  static HitsIndex Load(const std::filesystem::path& dir);
  std::string serialize() const;

  std::size_t page_count() const { return pages_.size(); }
  const std::vector<Page>& pages() const { return pages_; }
  // Folded word -> occurrence keys.
  const std::vector<std::uint64_t>& postings(std::string_view folded_word) const;
  // FNV-1a of the serialized form; names the cache file.
  std::uint64_t fingerprint() const { return fingerprint_; }

  std::vector<std::uint64_t> occurrences(const HitPhrase& phrase) const;
  std::uint64_t count(const HitQuery& q) const;

 private:
  void build_postings();

  std::vector<Page> pages_;
  std::unordered_map<std::string, std::vector<std::uint64_t>> folded_;
  std::unordered_map<std::string, std::vector<std::uint64_t>> exact_;
  std::uint64_t fingerprint_ = 0;
};

class IndexOracle final : public HitOracle {
 public:
  explicit IndexOracle(const HitsIndex& index) : index_(index) {}
  std::uint64_t hits(const HitQuery& q) override { return index_.count(q); }

 private:
  const HitsIndex& index_;
};

// Free-function form used by tests and tools.
std::uint64_t hits(const HitsIndex& index, const HitQuery& q);

// hits(low_i NEAR low_j) / hits(low_i); 0 when the denominator is 0.
double score_low(HitOracle& oracle, std::string_view phrase_i, std::string_view phrase_j);
double score_low(const HitsIndex& index, std::string_view phrase_i, std::string_view phrase_j);
// hits(cap_i AND low_j) / hits(cap_i); 0 when the denominator is 0.
double score_cap(HitOracle& oracle, std::string_view phrase_i, std::string_view phrase_j);
double score_cap(const HitsIndex& index, std::string_view phrase_i, std::string_view phrase_j);

// Thread-safe memo of canonical query -> hit count.
class HitCache {
 public:
  bool lookup(const std::string& key, std::uint64_t& value) const;
  void store(const std::string& key, std::uint64_t value);
  std::size_t size() const;

  // Lines "query<TAB>count", sorted by query.
  void save(const std::filesystem::path& file) const;
  // Missing file is not an error. Malformed lines throw DataError.
  void load(const std::filesystem::path& file);
  // <dir>/hits-<fingerprint>.tsv
  static std::filesystem::path FileFor(const std::filesystem::path& dir, const HitsIndex& index);

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::uint64_t> entries_;
};

// One document's view of the oracle: memoizes through a shared cache and
// counts the distinct queries it asked and the ones that reached the index.
class CachedHits final : public HitOracle {
 public:
  CachedHits(HitCache& cache, HitOracle& backend) : cache_(cache), backend_(backend) {}

  std::uint64_t hits(const HitQuery& q) override;

  std::size_t distinct_queries() const { return seen_.size(); }
  std::size_t issued_queries() const { return issued_; }

 private:
  HitCache& cache_;
  HitOracle& backend_;
  std::set<std::string> seen_;
  std::size_t issued_ = 0;
};

std::uint64_t cached_hits(HitCache& cache, const HitsIndex& index, const HitQuery& q);

}  // namespace coherex
