#pragma once

#include <stdexcept>
#include <string>

namespace coherex {

// A caller broke an operation's documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bad or missing configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable, malformed or inconsistent input data (CLI exit code 3).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A serialized model or index could not be loaded.
class LoadError : public DataError {
 public:
  using DataError::DataError;
};

// The hit-count oracle failed for a specific query. The caller may retry.
class HitOracleError : public std::runtime_error {
 public:
  HitOracleError(const std::string& query, const std::string& what)
      : std::runtime_error("hit query failed [" + query + "]: " + what), query_(query) {}
  const std::string& query() const { return query_; }

 private:
  std::string query_;
};

}  // namespace coherex
