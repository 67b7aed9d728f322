#include "gwq/frobenius.hpp"

#include <algorithm>
#include <stdexcept>

namespace gwq {

Matrix invert_exact(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  Matrix a = m;
  Matrix inv(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n)
      throw std::invalid_argument("matrix not square");
    inv[i][i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::invalid_argument("singular pairing matrix");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rational d = a[col][col];
    for (int c = 0; c < n; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (int c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

FrobeniusAlgebra::FrobeniusAlgebra(std::vector<std::string> labels,
                                   std::vector<int> degrees, Matrix pairing)
    : labels_(std::move(labels)),
      degrees_(std::move(degrees)),
      pairing_(std::move(pairing)) {
  const int n = dim();
  if (n == 0 || static_cast<int>(degrees_.size()) != n ||
      static_cast<int>(pairing_.size()) != n)
    throw std::invalid_argument("inconsistent algebra data");
  top_degree_ = *std::max_element(degrees_.begin(), degrees_.end());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (pairing_[i][j] != pairing_[j][i])
        throw std::invalid_argument("pairing matrix not symmetric");
      if (pairing_[i][j] != 0 && degrees_[i] + degrees_[j] != top_degree_)
        throw std::invalid_argument("pairing violates grading");
    }
  inverse_ = invert_exact(pairing_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational s = 0;
      for (int k = 0; k < n; ++k) s += pairing_[i][k] * inverse_[k][j];
      if (s != Rational(i == j ? 1 : 0))
        throw std::logic_error("pairing inverse check failed");
    }
}

const FrobeniusAlgebra& FrobeniusAlgebra::point() {
  static const FrobeniusAlgebra pt({"1"}, {0}, {{Rational(1)}});
  return pt;
}

FrobeniusAlgebra FrobeniusAlgebra::p1() {
  Matrix g{{0, 1}, {1, 0}};
  return FrobeniusAlgebra({"1", "H"}, {0, 2}, g);
}

Rational frobenius_pair(const std::vector<Rational>& a,
                        const std::vector<Rational>& b,
                        const FrobeniusAlgebra& alg) {
  const int n = alg.dim();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("pairing dimension mismatch");
  Rational s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += a[i] * b[j] * alg.pairing()[i][j];
  return s;
}

TruncatedSeries frobenius_pair(const std::vector<TruncatedSeries>& a,
                               const std::vector<TruncatedSeries>& b,
                               const FrobeniusAlgebra& alg) {
  const int n = alg.dim();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
    throw std::invalid_argument("pairing dimension mismatch");
  TruncatedSeries s;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (alg.pairing()[i][j] == 0) continue;
      s += (a[i] * b[j]) * alg.pairing()[i][j];
    }
  return s;
}

}  // namespace gwq
