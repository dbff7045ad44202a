#pragma once

#include <vector>

namespace spacings {

// Type-7 quantile (linear interpolation between order statistics at
// h = (n-1)p). Input must be sorted; p in (0,1).
double quantile_type7(const std::vector<double>& sorted, double p);

// Empirical CDF over a sorted sample. Evaluation is a binary search,
// stderr is the binomial standard error sqrt(p(1-p)/R).
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> sorted_values);

  double operator()(double x) const;  // fraction of values <= x
  double stderr_at(double x) const;
  double quantile(double p) const;  // type-7

  long size() const { return static_cast<long>(values_.size()); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

}  // namespace spacings
