#pragma once

#include <vector>

#include "gwq/rational.hpp"

namespace gwq {

// <tau_{k_1} ... tau_{k_n}>_0 for the point target via the string-equation
// recursion down to <tau_0^3> = 1.  Zero unless sum k_i = n - 3; throws for
// n < 3.
Rational genus0_point_integral(std::vector<int> ks);

// Closed form (n-3)! / prod k_i! for the same bracket (independent check).
Rational genus0_point_closed_form(const std::vector<int>& ks);

// <tau_{k_1} ... tau_{k_n}>_g for the point target via the KdV-type recursion
// on the largest insertion.  Throws for unstable (g, n).
Rational dvv_correlator(int g, std::vector<int> ks);

}  // namespace gwq
