#pragma once

#include <string>
#include <vector>

#include "gwq/rational.hpp"
#include "gwq/series.hpp"

namespace gwq {

using Matrix = std::vector<std::vector<Rational>>;

// Finite-dimensional graded basis with Poincare pairing.  The inverse pairing
// is computed exactly on construction and g * g^{-1} is verified to be the
// identity.
class FrobeniusAlgebra {
 public:
  FrobeniusAlgebra(std::vector<std::string> labels, std::vector<int> degrees,
                   Matrix pairing);

  // One-dimensional algebra of the point target, pairing (1,1) = 1.
  static const FrobeniusAlgebra& point();

  // H*(P^1): basis {1, H}, deg H = 2, pairing antidiagonal.
  static FrobeniusAlgebra p1();

  int dim() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[i]; }
  int degree(int i) const { return degrees_[i]; }
  int top_degree() const { return top_degree_; }
  const Matrix& pairing() const { return pairing_; }
  const Matrix& pairing_inverse() const { return inverse_; }

  friend bool operator==(const FrobeniusAlgebra& a, const FrobeniusAlgebra& b) {
    return a.labels_ == b.labels_ && a.degrees_ == b.degrees_ &&
           a.pairing_ == b.pairing_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  int top_degree_;
  Matrix pairing_, inverse_;
};

Matrix invert_exact(const Matrix& m);  // Gaussian elimination over Q

// Poincare pairing of two vectors in the basis of alg: sum a^i b^j g_{ij}.
Rational frobenius_pair(const std::vector<Rational>& a,
                        const std::vector<Rational>& b,
                        const FrobeniusAlgebra& alg);
TruncatedSeries frobenius_pair(const std::vector<TruncatedSeries>& a,
                               const std::vector<TruncatedSeries>& b,
                               const FrobeniusAlgebra& alg);

}  // namespace gwq
