#include "coherex/bayes.h"

#include <algorithm>
#include <cmath>

#include "coherex/error.h"
#include "coherex/simd/kernels.h"

namespace coherex {

NaiveBayesModel::NaiveBayesModel(std::vector<std::string> feature_names, std::vector<std::size_t> interval_counts,
                                 double smoothing)
    : feature_names_(std::move(feature_names)), smoothing_(smoothing) {
  if (feature_names_.size() != interval_counts.size()) {
    throw ContractViolation("naive Bayes: one interval count per feature required");
  }
  if (!(smoothing_ > 0.0)) throw ContractViolation("naive Bayes smoothing must be > 0");
  feature_class_counts_.assign(feature_names_.size(), {0, 0});
  counts_.resize(feature_names_.size());
  for (std::size_t f = 0; f < interval_counts.size(); ++f) {
    if (interval_counts[f] == 0) throw ContractViolation("feature with zero intervals");
    counts_[f].assign(interval_counts[f], {0, 0});
  }
}

int NaiveBayesModel::clamp_interval(std::size_t feature, int interval) const {
  return std::clamp(interval, 0, static_cast<int>(counts_[feature].size()) - 1);
}

void NaiveBayesModel::add(const LabeledVector& v) {
  if (v.intervals.size() != arity()) throw ContractViolation("naive Bayes: vector arity mismatch");
  const int c = v.label ? 1 : 0;
  class_counts_[c] += 1;
  for (std::size_t f = 0; f < arity(); ++f) {
    feature_class_counts_[f][c] += 1;
    counts_[f][clamp_interval(f, v.intervals[f])][c] += 1;
  }
}

void NaiveBayesModel::add_feature(std::size_t feature, int interval, bool label) {
  if (feature >= arity()) throw ContractViolation("naive Bayes: feature index out of range");
  const int c = label ? 1 : 0;
  feature_class_counts_[feature][c] += 1;
  counts_[feature][clamp_interval(feature, interval)][c] += 1;
}

double NaiveBayesModel::raw_prior(ClassLabel c) const {
  const long total = class_counts_[0] + class_counts_[1];
  return total == 0 ? 0.0 : static_cast<double>(class_counts_[idx(c)]) / static_cast<double>(total);
}

double NaiveBayesModel::prior(ClassLabel c) const {
  const double total = static_cast<double>(class_counts_[0] + class_counts_[1]);
  return (static_cast<double>(class_counts_[idx(c)]) + smoothing_) / (total + 2.0 * smoothing_);
}

double NaiveBayesModel::likelihood(std::size_t feature, int interval, ClassLabel c) const {
  const auto& row = counts_[feature][clamp_interval(feature, interval)];
  const double intervals = static_cast<double>(counts_[feature].size());
  return (static_cast<double>(row[idx(c)]) + smoothing_) /
         (static_cast<double>(feature_class_counts_[feature][idx(c)]) + smoothing_ * intervals);
}

std::array<double, 2> NaiveBayesModel::log_joint(std::span<const int> x) const {
  if (x.size() != arity()) throw ContractViolation("naive Bayes: vector arity mismatch");
  std::array<double, 2> out{};
  for (int c = 0; c < 2; ++c) {
    const auto cl = static_cast<ClassLabel>(c);
    double acc = std::log(prior(cl));
    for (std::size_t f = 0; f < arity(); ++f) acc += std::log(likelihood(f, x[f], cl));
    out[c] = acc;
  }
  return out;
}

double posterior_from_log_joint(double log_key, double log_nonkey) {
  return 1.0 / (1.0 + std::exp(log_nonkey - log_key));
}

double NaiveBayesModel::posterior(std::span<const int> x) const {
  const auto lj = log_joint(x);
  return posterior_from_log_joint(lj[1], lj[0]);
}

std::vector<double> NaiveBayesModel::posterior_batch(std::span<const int> rows) const {
  const std::size_t f_count = arity();
  if (f_count == 0 || rows.size() % f_count != 0) {
    throw ContractViolation("posterior_batch: row data is not a multiple of the arity");
  }
  const std::size_t n = rows.size() / f_count;
  std::vector<std::int32_t> base(f_count), last(f_count);
  std::array<std::vector<double>, 2> tables;
  std::int32_t offset = 0;
  for (std::size_t f = 0; f < f_count; ++f) {
    base[f] = offset;
    last[f] = static_cast<std::int32_t>(counts_[f].size()) - 1;
    offset += static_cast<std::int32_t>(counts_[f].size());
  }
  std::array<std::vector<double>, 2> sums;
  for (int c = 0; c < 2; ++c) {
    const auto cl = static_cast<ClassLabel>(c);
    for (std::size_t f = 0; f < f_count; ++f) {
      for (std::size_t i = 0; i < counts_[f].size(); ++i) tables[c].push_back(std::log(likelihood(f, int(i), cl)));
    }
    sums[c].resize(n);
    simd::GatherSumArgs args;
    args.table = tables[c];
    args.base = base;
    args.last = last;
    args.intervals = std::span<const std::int32_t>(reinterpret_cast<const std::int32_t*>(rows.data()), rows.size());
    args.features = f_count;
    args.init = std::log(prior(cl));
    simd::gather_sum(args, sums[c]);
  }
  std::vector<double> out(n);
  for (std::size_t r = 0; r < n; ++r) out[r] = posterior_from_log_joint(sums[1][r], sums[0][r]);
  return out;
}

NaiveBayesModel::Counts NaiveBayesModel::counts() const {
  return Counts{class_counts_, feature_class_counts_, counts_};
}

NaiveBayesModel NaiveBayesModel::FromCounts(std::vector<std::string> feature_names, Counts counts, double smoothing) {
  std::vector<std::size_t> sizes;
  for (const auto& f : counts.conditional) sizes.push_back(f.size());
  if (counts.feature_classes.size() != sizes.size()) throw ContractViolation("inconsistent naive Bayes counts");
  NaiveBayesModel m(std::move(feature_names), sizes, smoothing);
  m.class_counts_ = counts.classes;
  m.feature_class_counts_ = std::move(counts.feature_classes);
  m.counts_ = std::move(counts.conditional);
  return m;
}

NaiveBayesModel train_naive_bayes(std::span<const LabeledVector> vectors, std::vector<std::string> feature_names,
                                  std::vector<std::size_t> interval_counts, double smoothing) {
  if (vectors.empty()) throw ContractViolation("naive Bayes training needs at least one vector");
  NaiveBayesModel m(std::move(feature_names), std::move(interval_counts), smoothing);
  for (const auto& v : vectors) m.add(v);
  return m;
}

}  // namespace coherex
