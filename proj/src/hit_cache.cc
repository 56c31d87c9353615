#include <cstdio>
#include <fstream>

#include "coherex/error.h"
#include "coherex/hits.h"

namespace fs = std::filesystem;

namespace coherex {

bool HitCache::lookup(const std::string& key, std::uint64_t& value) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return false;
  value = it->second;
  return true;
}

void HitCache::store(const std::string& key, std::uint64_t value) {
  std::lock_guard<std::mutex> lock(mu_);
  entries_.emplace(key, value);
}

std::size_t HitCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

void HitCache::save(const fs::path& file) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::error_code ec;
  if (file.has_parent_path()) fs::create_directories(file.parent_path(), ec);
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw DataError("cannot write hit cache " + tmp.string());
    for (const auto& [k, v] : entries_) out << k << '\t' << v << '\n';
    if (!out) throw DataError("error writing hit cache " + tmp.string());
  }
  fs::rename(tmp, file, ec);
  if (ec) throw DataError("cannot move hit cache into place: " + file.string());
}

void HitCache::load(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return;
  std::lock_guard<std::mutex> lock(mu_);
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw DataError("malformed hit cache line " + std::to_string(line_no));
    try {
      entries_[line.substr(0, tab)] = std::stoull(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw DataError("malformed hit count on hit cache line " + std::to_string(line_no));
    }
  }
}

fs::path HitCache::FileFor(const fs::path& dir, const HitsIndex& index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "hits-%016llx.tsv", static_cast<unsigned long long>(index.fingerprint()));
  return dir / buf;
}

std::uint64_t CachedHits::hits(const HitQuery& q) {
  const std::string key = q.canonical();
  seen_.insert(key);
  std::uint64_t value = 0;
  if (cache_.lookup(key, value)) return value;
  ++issued_;
  try {
    value = backend_.hits(q);
  } catch (const HitOracleError&) {
    throw;
  } catch (const std::exception& e) {
    throw HitOracleError(key, e.what());
  }
  cache_.store(key, value);
  return value;
}

std::uint64_t cached_hits(HitCache& cache, const HitsIndex& index, const HitQuery& q) {
  IndexOracle oracle(index);
  CachedHits session(cache, oracle);
  return session.hits(q);
}

}  // namespace coherex
