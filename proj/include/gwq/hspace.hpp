#pragma once

#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "gwq/frobenius.hpp"
#include "gwq/series.hpp"

namespace gwq {

// Cohomology-valued Laurent polynomial in z.  Coefficients are vectors of
// TruncatedSeries (in formal parameters; constants for plain elements), so
// the same type carries both numeric elements of H and families like cone
// points.  The z-range is whatever the sparse map holds; H_+ / H_- are
// recovered by exponent sign.
class HElement {
 public:
  HElement() = default;  // placeholder; assign before use
  HElement(const FrobeniusAlgebra* alg, UniversePtr uni, Truncation trunc)
      : alg_(alg), uni_(std::move(uni)), trunc_(trunc) {}

  const FrobeniusAlgebra& algebra() const { return *alg_; }
  const FrobeniusAlgebra* algebra_ptr() const { return alg_; }
  const UniversePtr& universe() const { return uni_; }
  const Truncation& truncation() const { return trunc_; }

  bool is_zero() const { return coeff_.empty(); }
  int z_min() const { return coeff_.empty() ? 0 : coeff_.begin()->first; }
  int z_max() const { return coeff_.empty() ? 0 : coeff_.rbegin()->first; }
  const std::map<int, std::vector<TruncatedSeries>>& coefficients() const {
    return coeff_;
  }

  // Component mu of the z^k coefficient (zero series if absent).
  TruncatedSeries component(int k, int mu) const;
  TruncatedSeries zero_series() const;

  void add(int z_pow, int mu, const TruncatedSeries& c);
  void add(int z_pow, int mu, const Rational& c);
  void add_scaled(const HElement& o, const Rational& c);

  HElement plus_part() const;   // z^k, k >= 0
  HElement minus_part() const;  // z^k, k < 0

  friend HElement operator+(const HElement& a, const HElement& b);
  friend HElement operator-(const HElement& a, const HElement& b);
  friend HElement operator*(const HElement& a, const Rational& c);
  friend bool operator==(const HElement& a, const HElement& b);

 private:
  void prune(int z_pow);
  const FrobeniusAlgebra* alg_ = nullptr;
  UniversePtr uni_;
  Truncation trunc_;
  std::map<int, std::vector<TruncatedSeries>> coeff_;
};

// Darboux readoff of eq-style coordinates: q[k][mu] for the phi_mu z^k part,
// p[l][nu] for the phi^nu (-z)^{-1-l} part.
struct DarbouxVector {
  std::vector<std::vector<TruncatedSeries>> q;  // q[k][mu], 0 <= k <= z_max
  std::vector<std::vector<TruncatedSeries>> p;  // p[l][nu], 0 <= l <= -z_min-1
};

// Omega(f, g) = Res_{z=0} (f(-z), g(z)) dz, exact.
TruncatedSeries omega(const HElement& f, const HElement& g);

DarbouxVector to_darboux(const HElement& f);
HElement from_darboux(const DarbouxVector& d, const FrobeniusAlgebra& alg,
                      UniversePtr uni, Truncation trunc);

// t(z) |-> t(z) - z (identity class is the first basis vector).
HElement dilaton_shift(const HElement& t);
HElement dilaton_unshift(const HElement& q);

nlohmann::ordered_json helement_to_json(const HElement& f);
HElement helement_from_json(const nlohmann::json& j, const FrobeniusAlgebra& alg);

}  // namespace gwq
