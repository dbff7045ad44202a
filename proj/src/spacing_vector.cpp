#include "spacings/spacing_vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace spacings {

namespace {

void validate_points(const double* x, long n, int r, double A, double B) {
  check_arg(r >= 1, "spacing_vector: r must be >= 1");
  check_arg(n >= r, "spacing_vector: need at least r points");
  check_arg(B > A, "spacing_vector: interval [A,B] is empty");
  check_arg(x[0] >= A && x[n - 1] <= B,
            "spacing_vector: points must lie inside [A,B]");
  for (long i = 1; i < n; ++i)
    check_arg(x[i - 1] <= x[i], "spacing_vector: points must be sorted");
}

long spacing_count(long n, int r, Boundary b) {
  return b == Boundary::WithEnds ? n - r + 2 : n - r;
}

// Calls emit(gap) for every r-spacing in index order.
template <typename F>
void for_each_spacing(const double* x, long n, int r, Boundary b, double A,
                      double B, F&& emit) {
  if (b == Boundary::WithEnds) {
    emit(x[r - 1] - A);
    for (long i = 0; i + r < n; ++i) emit(x[i + r] - x[i]);
    emit(B - x[n - r]);
  } else {
    for (long i = 0; i + r < n; ++i) emit(x[i + r] - x[i]);
  }
}

}  // namespace

std::vector<double> spacing_vector(const std::vector<double>& points, int r,
                                   Boundary boundary, double A, double B) {
  long n = static_cast<long>(points.size());
  validate_points(points.data(), n, r, A, B);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(spacing_count(n, r, boundary)));
  for_each_spacing(points.data(), n, r, boundary, A, B,
                   [&out](double g) { out.push_back(g); });
  return out;
}

double kth_max_spacing(const double* points, long n, int r, int k,
                       Boundary boundary, double A, double B) {
  validate_points(points, n, r, A, B);
  long count = spacing_count(n, r, boundary);
  check_arg(k >= 1 && k <= count,
            "kth_max_spacing: k exceeds the number of spacings");

  if (k <= 64) {
    // Running top-k: best[0] is the largest, best[k-1] the k-th largest.
    // k <= count, so all k slots are written before best[k-1] is read.
    double best[64] = {};
    int filled = 0;
    for_each_spacing(points, n, r, boundary, A, B, [&](double g) {
      if (filled < k) {
        int pos = filled++;
        while (pos > 0 && best[pos - 1] < g) {
          best[pos] = best[pos - 1];
          --pos;
        }
        best[pos] = g;
      } else if (g > best[k - 1]) {
        int pos = k - 1;
        while (pos > 0 && best[pos - 1] < g) {
          best[pos] = best[pos - 1];
          --pos;
        }
        best[pos] = g;
      }
    });
    return best[k - 1];
  }

  std::vector<double> all;
  all.reserve(static_cast<size_t>(count));
  for_each_spacing(points, n, r, boundary, A, B,
                   [&all](double g) { all.push_back(g); });
  std::nth_element(all.begin(), all.begin() + (k - 1), all.end(),
                   std::greater<double>());
  return all[static_cast<size_t>(k - 1)];
}

}  // namespace spacings
