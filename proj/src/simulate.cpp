#include "spacings/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "spacings/ecdf.hpp"
#include "spacings/gamma_tail.hpp"
#include "spacings/parallel.hpp"
#include "spacings/rng.hpp"
#include "spacings/spacing_vector.hpp"

namespace spacings {

std::vector<double> simulate_kth_max_rspacing(const SimulationSpec& spec,
                                              int threads) {
  spec.query.validate();
  check_arg(spec.replicates >= 1, "simulate: replicates must be positive");
  const long n = spec.query.n;
  const int r = spec.query.r;
  const int k = spec.query.k;
  const double A = spec.model.support_lo();
  const double B = spec.model.support_hi();
  const bool plain_uniform =
      spec.model.kind() == DensityKind::Uniform && A == 0.0 && B == 1.0;

  std::vector<double> out(static_cast<size_t>(spec.replicates));
  parallel_blocks(spec.replicates, threads, [&](long lo, long hi) {
    std::vector<double> pts(static_cast<size_t>(n));
    for (long i = lo; i < hi; ++i) {
      auto eng = substream(spec.master_seed, static_cast<std::uint64_t>(i));
      // T_j / T_{n+1} for exponential partial sums T_j is the j-th uniform
      // order statistic, so the sample comes out sorted for free.
      double t = 0.0;
      for (long j = 0; j < n; ++j) {
        t += exponential(eng);
        pts[static_cast<size_t>(j)] = t;
      }
      t += exponential(eng);
      double guess = A;
      for (long j = 0; j < n; ++j) {
        double u = pts[static_cast<size_t>(j)] / t;
        double x = plain_uniform ? u : spec.model.quantile_warm(u, guess);
        // The transform is monotone; the solver may invert near-ties by an
        // ulp, which the downstream sortedness check rejects.
        if (x < guess) x = guess;
        pts[static_cast<size_t>(j)] = x;
        guess = x;
      }
      out[static_cast<size_t>(i)] =
          kth_max_spacing(pts.data(), n, r, k, spec.boundary, A, B);
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> empirical_quantiles(const std::vector<double>& sorted,
                                        const std::vector<double>& probs) {
  std::vector<double> out;
  out.reserve(probs.size());
  for (double p : probs) out.push_back(quantile_type7(sorted, p));
  return out;
}

std::vector<double> simulate_scaled_gamma_max(long n, int r, long replicates,
                                              std::uint64_t seed, int threads) {
  check_arg(n >= 1 && r >= 1 && replicates >= 1,
            "scaled gamma max: n, r, replicates must be positive");
  std::vector<double> out(static_cast<size_t>(replicates));
  parallel_blocks(replicates, threads, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) {
      auto eng = substream(seed, static_cast<std::uint64_t>(i));
      double best = 0.0;
      for (long j = 0; j < n; ++j) {
        // Gamma(r,1) as -log of a product of r uniforms; one log per draw.
        double prod = 1.0;
        for (int l = 0; l < r; ++l) prod *= uniform01(eng);
        double g = -std::log(prod);
        if (g > best) best = g;
      }
      out[static_cast<size_t>(i)] = best / static_cast<double>(n);
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

AssociationCheck check_association_inequality(long n, int r, double x,
                                              long replicates,
                                              std::uint64_t seed, int threads) {
  check_arg(n >= 1 && r >= 1 && replicates >= 1,
            "association check: n, r, replicates must be positive");
  check_arg(x > 0.0, "association check: x must be positive");

  std::atomic<long> total{0};
  parallel_blocks(replicates, threads, [&](long lo, long hi) {
    long local = 0;
    std::vector<double> e(static_cast<size_t>(r), 0.0);
    for (long i = lo; i < hi; ++i) {
      auto eng = substream(seed, static_cast<std::uint64_t>(i));
      // Sliding window sum over n+r-1 exponentials; all n block sums must
      // stay below x for the replicate to count.
      double window = 0.0;
      for (int l = 0; l < r; ++l) {
        e[static_cast<size_t>(l)] = exponential(eng);
        window += e[static_cast<size_t>(l)];
      }
      bool all_below = window < x;
      for (long j = 1; all_below && j < n; ++j) {
        double fresh = exponential(eng);
        window += fresh - e[static_cast<size_t>((j - 1) % r)];
        e[static_cast<size_t>((j - 1) % r)] = fresh;
        all_below = window < x;
      }
      if (all_below) ++local;
    }
    total.fetch_add(local, std::memory_order_relaxed);
  });
  AssociationCheck out;
  out.lhs = static_cast<double>(total) / static_cast<double>(replicates);
  double one_block = 1.0 - gamma_tail(r, x);
  out.rhs = std::pow(one_block, static_cast<double>(n));
  out.stderr_lhs =
      std::sqrt(out.lhs * (1.0 - out.lhs) / static_cast<double>(replicates));
  out.pass = out.lhs >= out.rhs - 3.0 * out.stderr_lhs;
  return out;
}

}  // namespace spacings
