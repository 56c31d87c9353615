#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace coherex {

enum class ClassLabel : int { kNonKey = 0, kKey = 1 };

// A discretized feature vector: one interval index per feature.
using IntervalVector = std::vector<int>;

struct LabeledVector {
  IntervalVector intervals;
  bool label = false;
};

// Class-conditional interval counts over discretized features, combined with
// Bayes' rule under the independence assumption.
class NaiveBayesModel {
 public:
  NaiveBayesModel() = default;
  // interval_counts[f] is the number of intervals of feature f.
  NaiveBayesModel(std::vector<std::string> feature_names, std::vector<std::size_t> interval_counts,
                  double smoothing = 1.0);

  // Adds one vector to every feature's counts and to the class prior.
  void add(const LabeledVector& v);
  // Per-feature training: counts one observation of feature f only. The
  // feature keeps its own class totals.
  void add_feature(std::size_t feature, int interval, bool label);

  std::size_t arity() const { return feature_names_.size(); }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  std::size_t interval_count(std::size_t feature) const { return counts_[feature].size(); }
  double smoothing() const { return smoothing_; }

  long class_count(ClassLabel c) const { return class_counts_[idx(c)]; }
  long feature_class_count(std::size_t feature, ClassLabel c) const { return feature_class_counts_[feature][idx(c)]; }
  long conditional_count(std::size_t feature, std::size_t interval, ClassLabel c) const {
    return counts_[feature][interval][idx(c)];
  }

  // Unsmoothed class frequency.
  double raw_prior(ClassLabel c) const;
  // (count + s) / (total + 2s).
  double prior(ClassLabel c) const;
  // (count + s) / (class total of this feature + s * intervals). Out-of-range
  // intervals are clamped to the nearest fitted one.
  double likelihood(std::size_t feature, int interval, ClassLabel c) const;

  // p(key | x), computed in log space and normalized over the two classes.
  double posterior(std::span<const int> x) const;
  std::array<double, 2> log_joint(std::span<const int> x) const;

  // Posteriors of many row-major vectors through the SIMD gather kernel;
  // identical to calling posterior() per row.
  std::vector<double> posterior_batch(std::span<const int> rows) const;

  // Raw counts, for serialization.
  struct Counts {
    std::array<long, 2> classes{};
    std::vector<std::array<long, 2>> feature_classes;
    std::vector<std::vector<std::array<long, 2>>> conditional;
  };
  Counts counts() const;
  static NaiveBayesModel FromCounts(std::vector<std::string> feature_names, Counts counts, double smoothing);

 private:
  static int idx(ClassLabel c) { return static_cast<int>(c); }
  int clamp_interval(std::size_t feature, int interval) const;

  std::vector<std::string> feature_names_;
  double smoothing_ = 1.0;
  std::array<long, 2> class_counts_{};
  std::vector<std::array<long, 2>> feature_class_counts_;
  std::vector<std::vector<std::array<long, 2>>> counts_;
};

// Trains on a set of vectors of equal arity. Throws ContractViolation on
// arity mismatch or empty input.
NaiveBayesModel train_naive_bayes(std::span<const LabeledVector> vectors, std::vector<std::string> feature_names,
                                  std::vector<std::size_t> interval_counts, double smoothing = 1.0);

// p(key) from the two log joints: 1 / (1 + exp(non - key)).
double posterior_from_log_joint(double log_key, double log_nonkey);

}  // namespace coherex
