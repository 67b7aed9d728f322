#include "gwq/oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace gwq {

namespace {

int sum_of(const std::vector<int>& ks) {
  return std::accumulate(ks.begin(), ks.end(), 0);
}

Rational genus0_rec(std::vector<int> ks,
                    std::map<std::vector<int>, Rational>& memo) {
  const int n = static_cast<int>(ks.size());
  if (sum_of(ks) != n - 3) return 0;
  if (n == 3) return 1;  // all-zero is the only option at sum 0
  auto it = memo.find(ks);
  if (it != memo.end()) return it->second;
  // split off one tau_0 (present by pigeonhole) and apply the string equation
  std::vector<int> rest(ks.begin(), ks.end() - 1);  // ks sorted descending
  Rational out = 0;
  for (size_t j = 0; j < rest.size(); ++j) {
    if (rest[j] == 0) break;
    if (j > 0 && rest[j] == rest[j - 1]) continue;
    int mult = static_cast<int>(
        std::count(rest.begin(), rest.end(), rest[j]));
    std::vector<int> next = rest;
    next[j] -= 1;
    std::sort(next.begin(), next.end(), std::greater<int>());
    out += Rational(mult) * genus0_rec(std::move(next), memo);
  }
  memo[ks] = out;
  return out;
}

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Integer double_factorial_odd(int m) {  // m!! for odd m >= -1
  Integer f = 1;
  for (int i = m; i >= 3; i -= 2) f *= i;
  return f;
}

using DvvKey = std::pair<int, std::vector<int>>;

Rational dvv_rec(int g, std::vector<int> ks,
                 std::map<DvvKey, Rational>& memo) {
  const int n = static_cast<int>(ks.size());
  if (g < 0) return 0;
  if (2 * g - 2 + n <= 0) return 0;
  if (sum_of(ks) != 3 * g - 3 + n) return 0;
  if (g == 0 && n == 3) return 1;
  std::sort(ks.begin(), ks.end(), std::greater<int>());
  DvvKey key{g, ks};
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  // recurse on the largest insertion k+1 (>= 1 since the all-zero stable
  // bracket is only <tau_0^3>_0, handled above)
  const int k = ks[0] - 1;
  std::vector<int> M(ks.begin() + 1, ks.end());

  Rational out = 0;
  // string/dilaton-type transfer terms
  for (size_t j = 0; j < M.size(); ++j) {
    if (j > 0 && M[j] == M[j - 1]) continue;
    int mult = static_cast<int>(std::count(M.begin(), M.end(), M[j]));
    std::vector<int> next = M;
    next[j] = k + M[j];
    Rational w = Rational(double_factorial_odd(2 * (k + M[j]) + 1)) /
                 double_factorial_odd(2 * M[j] - 1);
    out += Rational(mult) * w * dvv_rec(g, std::move(next), memo);
  }
  // boundary terms
  for (int a = 0; a <= k - 1; ++a) {
    int b = k - 1 - a;
    Rational w = Rational(double_factorial_odd(2 * a + 1)) *
                 double_factorial_odd(2 * b + 1) / 2;
    // non-separating
    {
      std::vector<int> next = M;
      next.push_back(a);
      next.push_back(b);
      out += w * dvv_rec(g - 1, std::move(next), memo);
    }
    // separating: split the remaining insertions as a labeled set
    std::vector<std::pair<int, int>> distinct;  // (value, multiplicity)
    for (size_t j = 0; j < M.size(); ++j) {
      if (j == 0 || M[j] != M[j - 1]) distinct.push_back({M[j], 1});
      else distinct.back().second += 1;
    }
    std::vector<int> pick(distinct.size(), 0);
    while (true) {
      Rational weight = 1;
      std::vector<int> M1, M2;
      for (size_t i = 0; i < distinct.size(); ++i) {
        int m = distinct[i].second, p = pick[i];
        Rational binom = 1;
        for (int j = 0; j < p; ++j) binom = binom * (m - j) / (j + 1);
        weight *= binom;
        for (int j = 0; j < p; ++j) M1.push_back(distinct[i].first);
        for (int j = 0; j < m - p; ++j) M2.push_back(distinct[i].first);
      }
      for (int g1 = 0; g1 <= g; ++g1) {
        std::vector<int> s1 = M1, s2 = M2;
        s1.push_back(a);
        s2.push_back(b);
        Rational f1 = dvv_rec(g1, std::move(s1), memo);
        if (f1 == 0) continue;
        out += w * weight * f1 * dvv_rec(g - g1, std::move(s2), memo);
      }
      size_t pos = 0;
      for (; pos < pick.size(); ++pos) {
        if (pick[pos] < distinct[pos].second) {
          ++pick[pos];
          break;
        }
        pick[pos] = 0;
      }
      if (pos == pick.size()) break;
    }
  }
  if (k == 0 && g == 1 && M.empty()) out += Rational(1, 8);
  out /= double_factorial_odd(2 * k + 3);
  memo[key] = out;
  return out;
}

}  // namespace

Rational genus0_point_integral(std::vector<int> ks) {
  if (ks.size() < 3) throw std::invalid_argument("need at least 3 insertions");
  std::sort(ks.begin(), ks.end(), std::greater<int>());
  static std::map<std::vector<int>, Rational> memo;
  return genus0_rec(std::move(ks), memo);
}

Rational genus0_point_closed_form(const std::vector<int>& ks) {
  const int n = static_cast<int>(ks.size());
  if (n < 3) throw std::invalid_argument("need at least 3 insertions");
  if (sum_of(ks) != n - 3) return 0;
  Rational out = factorial(n - 3);
  for (int k : ks) out /= factorial(k);
  return out;
}

Rational dvv_correlator(int g, std::vector<int> ks) {
  if (2 * g - 2 + static_cast<int>(ks.size()) <= 0)
    throw std::invalid_argument("unstable (g, n)");
  static std::map<DvvKey, Rational> memo;
  return dvv_rec(g, std::move(ks), memo);
}

}  // namespace gwq
