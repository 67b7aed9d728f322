#pragma once

#include "gwq/cone.hpp"

namespace gwq {

// S^1-equivariant class on a fixed locus: a Laurent polynomial in the
// equivariant parameter z with coefficients polynomial in the psi class at
// the distinguished point.  psi is nilpotent: powers at or above `nilpotency`
// vanish identically (the moduli space dimension bounds them).
class EquivariantClass {
 public:
  EquivariantClass(UniversePtr uni, Truncation tr, int nilpotency)
      : uni_(std::move(uni)), tr_(tr), nilp_(nilpotency) {}

  static EquivariantClass monomial(UniversePtr uni, Truncation tr,
                                   int nilpotency, int z_pow, int psi_pow,
                                   const Rational& c);

  int nilpotency() const { return nilp_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::pair<int, int>, TruncatedSeries>& terms() const {
    return terms_;
  }
  TruncatedSeries coefficient(int z_pow, int psi_pow) const;
  void add(int z_pow, int psi_pow, const TruncatedSeries& s);
  void add(int z_pow, int psi_pow, const Rational& c);

  friend EquivariantClass operator+(const EquivariantClass& a,
                                    const EquivariantClass& b);
  friend EquivariantClass operator-(const EquivariantClass& a,
                                    const EquivariantClass& b);
  friend EquivariantClass operator*(const EquivariantClass& a,
                                    const EquivariantClass& b);
  friend EquivariantClass operator*(const EquivariantClass& a,
                                    const Rational& c);
  friend bool operator==(const EquivariantClass& a, const EquivariantClass& b);
  friend EquivariantClass euler_inverse(const EquivariantClass& e);

  std::string str() const;

 private:
  UniversePtr uni_;
  Truncation tr_;
  int nilp_;
  std::map<std::pair<int, int>, TruncatedSeries> terms_;  // (z, psi) -> coeff
};

// Inverse of an equivariant Euler class whose psi-degree-zero part is a
// single invertible z-monomial; the psi-positive remainder is inverted by a
// finite geometric series.  Throws if the leading part is not invertible.
EquivariantClass euler_inverse(const EquivariantClass& e);

enum class FixedLocusKind {
  kExceptionalZero,  // degree (0,0): the point at 0, contributes -z
  kExceptionalOne,   // degree (1,0): one marking at infinity, contributes t(z)
  kGeneral,          // a genus-zero vertex over 0 with n >= 2 inputs
};

// Pushforward contribution of one fixed-point locus to (ev_infty)_* of the
// graph-space class, written as an element of H.  For kGeneral the insertion
// count n selects the loci with n parametrized legs.
HElement fixed_locus_contribution(FixedLocusKind kind, int n,
                                  const HElement& t,
                                  const CorrelatorTable& table,
                                  const ConeConfig& cfg);

struct LocalizationBreakdown {
  HElement total;
  HElement exceptional_zero;
  HElement exceptional_one;
  std::vector<HElement> general;  // indexed from n = 2
};

LocalizationBreakdown ev_infty_push(const HElement& t,
                                    const CorrelatorTable& table,
                                    const ConeConfig& cfg);

struct TheoremReport {
  bool ok = true;
  std::string detail;
};

// The localization pushforward equals the cone point J(t) exactly, and the
// exceptional loci alone reproduce the dilaton-shifted input -z + t(z).
TheoremReport theorem1_verify(const HElement& t, const CorrelatorTable& table,
                              const ConeConfig& cfg);

}  // namespace gwq
