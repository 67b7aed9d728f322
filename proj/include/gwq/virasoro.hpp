#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwq/quantization.hpp"

namespace gwq {

// Insertion list: sorted (k, alpha) pairs, k = descendent level, alpha =
// cohomology index.
using Insertions = std::vector<std::pair<int, int>>;

Insertions make_insertions(std::vector<int> ks);  // point target, alpha = 0
Rational aut_order(const Insertions& ins);        // prod multiplicity!

// Descendent invariants keyed by (genus, degree, insertions).  For a
// one-dimensional algebra the dimension constraint is enforced: entries off
// the dimension axis read as zero.  Unstable brackets read as zero.  Stable,
// dimension-compatible entries that were never set throw.
class CorrelatorTable {
 public:
  explicit CorrelatorTable(const FrobeniusAlgebra* alg) : alg_(alg) {}

  const FrobeniusAlgebra& algebra() const { return *alg_; }

  void set(int g, int d, Insertions ins, Rational v);
  Rational get(int g, int d, const Insertions& ins) const;
  bool has(int g, int d, const Insertions& ins) const;
  std::size_t size() const { return vals_.size(); }

  // point-target shorthands (d = 0, alpha = 0)
  void set_point(int g, std::vector<int> ks, Rational v);
  Rational get_point(int g, std::vector<int> ks) const;

 private:
  const FrobeniusAlgebra* alg_;
  std::map<std::tuple<int, int, Insertions>, Rational> vals_;
};

// l_n on the z-power basis over [kmin, kmax]: l_{-1} is multiplication by
// z^{-1}; for n >= 0, z^k -> prod_{j=0}^{n} (k + 1/2 + j) z^{k+n}.
InfSymplectic virasoro_generator(int n, int kmin, int kmax);

// Quantized l_n in the shifted variables t_k, 0 <= k <= depth.
DiffOperator quantized_virasoro(int n, int depth);

// Central constant: the constraint operator is l^_n - delta_{n,0}/16.
DiffOperator virasoro_constraint_operator(int n, int depth);

// Solves the constraints for all stable point-target brackets with
// genus <= g_max and at most n_max + (g_max - g) insertions.
CorrelatorTable solve_virasoro(int g_max, int n_max);

// F^g assembled from the table over t-variables up to the universe depth.
GenusExpandedPotential assemble_potential(const CorrelatorTable& table,
                                          UniversePtr t_uni, Truncation tr,
                                          int g_max);

struct ConstraintReport {
  bool ok = true;
  std::string detail;  // first failing (n, grade, monomial) if any
};

// Applies each constraint operator to exp(sum hbar^{g-1} F^g) and checks the
// residual vanishes identically on the window interior: hbar grades
// -1..g_max-1, monomial degree <= degree, variable level <= depth - max(n, 0).
// The table must cover brackets with up to degree + 2 insertions.
ConstraintReport verify_constraints(const CorrelatorTable& table, int g_max,
                                    int n_min, int n_max, int depth,
                                    int degree);

}  // namespace gwq
