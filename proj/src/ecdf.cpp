#include "spacings/ecdf.hpp"

#include <algorithm>
#include <cmath>

#include "spacings/types.hpp"

namespace spacings {

double quantile_type7(const std::vector<double>& sorted, double p) {
  check_arg(!sorted.empty(), "quantile_type7: empty sample");
  check_arg(p > 0.0 && p < 1.0, "quantile_type7: p must lie in (0,1)");
  size_t n = sorted.size();
  if (n == 1) return sorted[0];
  double h = (static_cast<double>(n) - 1.0) * p;
  size_t i = static_cast<size_t>(h);
  if (i >= n - 1) return sorted[n - 1];
  double frac = h - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

Ecdf::Ecdf(std::vector<double> sorted_values) : values_(std::move(sorted_values)) {
  check_arg(!values_.empty(), "Ecdf: empty sample");
  check_arg(std::is_sorted(values_.begin(), values_.end()),
            "Ecdf: values must be sorted");
}

double Ecdf::operator()(double x) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) /
         static_cast<double>(values_.size());
}

double Ecdf::stderr_at(double x) const {
  double p = (*this)(x);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(values_.size()));
}

double Ecdf::quantile(double p) const { return quantile_type7(values_, p); }

}  // namespace spacings
