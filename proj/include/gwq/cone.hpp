#pragma once

#include <string>

#include "gwq/virasoro.hpp"

namespace gwq {

// F^0 over the coordinates t^alpha_k, 0 <= k <= depth(t_uni), assembled from
// the table.  With shift_to_q the same function is written in the shifted
// coordinates q(z) = t(z) - z, i.e. t_1^{(id)} = q_1^{(id)} + 1.
TruncatedSeries genus0_potential(const CorrelatorTable& table,
                                 UniversePtr t_uni, Truncation tr,
                                 bool shift_to_q = false);

struct ConeConfig {
  int z_depth = 5;  // negative z powers kept: z^{-1} .. z^{-z_depth}
  int n_max = 6;    // insertion bound (>= truncation degree is exact)
};

// J(t) = -z + t(z) + sum of descendent one-point classes against the kernel
// 1/(-z - psi).  The input must lie in the formal neighborhood: every
// coefficient series of t needs zero constant term.
HElement cone_point(const HElement& t, const CorrelatorTable& table,
                    const ConeConfig& cfg);

struct ConeReport {
  bool ok = true;
  std::string detail;
};

// Checks p^nu_l = dF^0/dq^nu_l on the Darboux coordinates of f, through
// parameter degree <= deg_assert.
ConeReport check_on_cone(const HElement& f, const CorrelatorTable& table,
                         int deg_assert);

// Cone invariance under scaling, certified through the Euler identity
// sum (t_k - delta) dF/dt_k = 2 F (exact through degree bound - 1).
ConeReport cone_homogeneity_check(const CorrelatorTable& table,
                                  UniversePtr t_uni, Truncation tr);

}  // namespace gwq
