#include <algorithm>
#include <cmath>
#include <numeric>

#include "coherex/error.h"
#include "coherex/features.h"

namespace coherex {

double class_entropy(std::size_t positives, std::size_t negatives) {
  const std::size_t n = positives + negatives;
  if (n == 0 || positives == 0 || negatives == 0) return 0.0;
  const double p = static_cast<double>(positives) / static_cast<double>(n);
  const double q = static_cast<double>(negatives) / static_cast<double>(n);
  return -(p * std::log2(p) + q * std::log2(q));
}

namespace {

// Runs of equal values with their class counts, ascending by value.
struct ValueGroups {
  std::vector<double> value;
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
};

class MdlSplitter {
 public:
  explicit MdlSplitter(ValueGroups g) : g_(std::move(g)) {
    prefix_pos_.assign(g_.value.size() + 1, 0);
    prefix_neg_.assign(g_.value.size() + 1, 0);
    for (std::size_t i = 0; i < g_.value.size(); ++i) {
      prefix_pos_[i + 1] = prefix_pos_[i] + g_.pos[i];
      prefix_neg_[i + 1] = prefix_neg_[i] + g_.neg[i];
    }
  }

  void split(std::size_t lo, std::size_t hi, std::vector<double>& cuts) const {
    if (hi - lo < 2) return;
    const std::size_t total_pos = prefix_pos_[hi] - prefix_pos_[lo];
    const std::size_t total_neg = prefix_neg_[hi] - prefix_neg_[lo];
    const std::size_t n = total_pos + total_neg;
    const double parent = class_entropy(total_pos, total_neg);

    bool found = false;
    std::size_t best = 0;
    double best_entropy = 0.0, best_left = 0.0, best_right = 0.0;
    for (std::size_t g = lo; g + 1 < hi; ++g) {
      if (!is_boundary(g)) continue;
      const std::size_t lp = prefix_pos_[g + 1] - prefix_pos_[lo];
      const std::size_t ln = prefix_neg_[g + 1] - prefix_neg_[lo];
      const std::size_t rp = total_pos - lp;
      const std::size_t rn = total_neg - ln;
      const double el = class_entropy(lp, ln);
      const double er = class_entropy(rp, rn);
      const double weighted =
          (static_cast<double>(lp + ln) * el + static_cast<double>(rp + rn) * er) / static_cast<double>(n);
      if (!found || weighted < best_entropy) {
        found = true;
        best = g;
        best_entropy = weighted;
        best_left = el;
        best_right = er;
      }
    }
    if (!found) return;

    const std::size_t lp = prefix_pos_[best + 1] - prefix_pos_[lo];
    const std::size_t ln = prefix_neg_[best + 1] - prefix_neg_[lo];
    const int k = classes(total_pos, total_neg);
    const int k1 = classes(lp, ln);
    const int k2 = classes(total_pos - lp, total_neg - ln);
    const double gain = parent - best_entropy;
    const double delta = std::log2(std::pow(3.0, k) - 2.0) - (k * parent - k1 * best_left - k2 * best_right);
    const double threshold = (std::log2(static_cast<double>(n - 1)) + delta) / static_cast<double>(n);
    if (!(gain > threshold)) return;

    split(lo, best + 1, cuts);
    cuts.push_back((g_.value[best] + g_.value[best + 1]) / 2.0);
    split(best + 1, hi, cuts);
  }

 private:
  static int classes(std::size_t p, std::size_t q) { return (p > 0 ? 1 : 0) + (q > 0 ? 1 : 0); }

  // A cut between groups g and g+1 can only be optimal unless both sides are
  // pure in the same class.
  bool is_boundary(std::size_t g) const {
    const bool left_pure_pos = g_.neg[g] == 0, left_pure_neg = g_.pos[g] == 0;
    const bool right_pure_pos = g_.neg[g + 1] == 0, right_pure_neg = g_.pos[g + 1] == 0;
    return !((left_pure_pos && right_pure_pos) || (left_pure_neg && right_pure_neg));
  }

  ValueGroups g_;
  std::vector<std::size_t> prefix_pos_, prefix_neg_;
};

}  // namespace

DiscretizationScheme fit_discretization(std::span<const double> values, std::span<const bool> labels,
                                        std::string feature_name) {
  if (values.empty()) throw ContractViolation("fit_discretization on empty input");
  if (values.size() != labels.size()) throw ContractViolation("fit_discretization: values/labels length mismatch");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  ValueGroups groups;
  for (std::size_t idx : order) {
    if (std::isnan(values[idx])) throw ContractViolation("fit_discretization: NaN value");
    if (groups.value.empty() || groups.value.back() != values[idx]) {
      groups.value.push_back(values[idx]);
      groups.pos.push_back(0);
      groups.neg.push_back(0);
    }
    (labels[idx] ? groups.pos : groups.neg).back() += 1;
  }
  const std::size_t group_count = groups.value.size();
  DiscretizationScheme scheme;
  scheme.feature_name = std::move(feature_name);
  MdlSplitter(std::move(groups)).split(0, group_count, scheme.cut_points);
  return scheme;
}

}  // namespace coherex
