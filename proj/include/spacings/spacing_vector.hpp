#pragma once

#include <vector>

#include "spacings/types.hpp"

namespace spacings {

// All r-spacings of a sorted sample in [A,B] under the given boundary
// convention. WithEnds returns n-r+2 values (X_(r)-A, the interior gaps,
// B-X_(n-r+1)); Interior returns the n-r gaps X_(i+r)-X_(i).
// Throws std::invalid_argument for unsorted input, n < r, or points
// outside [A,B].
std::vector<double> spacing_vector(const std::vector<double>& points, int r,
                                   Boundary boundary, double A, double B);

// k-th largest r-spacing of a sorted sample, computed in one pass without
// materializing the spacing vector. k must not exceed the spacing count for
// the chosen boundary convention.
double kth_max_spacing(const double* points, long n, int r, int k,
                       Boundary boundary, double A, double B);

}  // namespace spacings
