#pragma once

namespace spacings {

// Largest n accepted by exact_max_spacing_cdf_r1. Beyond this the
// alternating sum below cannot be trusted in double precision.
inline constexpr long kExactR1MaxN = 5000;

// Exact distribution of the maximal 1-spacing of n iid uniform points on
// [0,1], boundary gaps included:
//   P(M <= a) = 1 - sum_{j=1}^{n+1} (-1)^{j-1} C(n+1, j) max{0, 1-ja}^n.
// Terms are evaluated as sign * exp(lchoose + n*log1p(-ja)) with compensated
// summation. Returns 0 for a <= 1/(n+1) and 1 for a >= 1.
//
// The sum alternates, and deep in the lower tail (a barely above 1/(n+1) at
// large n) intermediate terms dwarf the result by tens of orders of
// magnitude. A running error bound (term magnitude times the condition
// number of its log) is tracked, and the function throws std::domain_error
// naming the catastrophic cancellation, with a pointer to the gamma
// approximation, whenever that bound exceeds 1e-10 or n > kExactR1MaxN.
double exact_max_spacing_cdf_r1(long n, double a);

}  // namespace spacings
