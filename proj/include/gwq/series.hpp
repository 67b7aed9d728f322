#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gwq/rational.hpp"

namespace gwq {

// Ordered list of formal variable names shared by all series of a
// computation.  Immutable; series hold a shared_ptr and compatibility is
// pointer identity or deep equality of names.
class VarUniverse {
 public:
  static std::shared_ptr<const VarUniverse> make(std::vector<std::string> names);

  // t_0 ... t_depth (or any other prefix), the common case.
  static std::shared_ptr<const VarUniverse> indexed(const std::string& prefix,
                                                    int depth);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  int index(const std::string& name) const;       // -1 if absent
  int index_or_throw(const std::string& name) const;

  friend bool operator==(const VarUniverse& a, const VarUniverse& b) {
    return a.names_ == b.names_;
  }

 private:
  explicit VarUniverse(std::vector<std::string> names);
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

using UniversePtr = std::shared_ptr<const VarUniverse>;

inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  return a == b || (a && b && *a == *b);
}

struct Truncation {
  int degree = 0;  // total-degree bound D_max
  int depth = 0;   // descendant-depth bound K_max (recorded; realized by the universe)
  int genus = 0;   // genus bound G_max (consumed by the hbar-graded layer)

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

using ExpVec = std::vector<int>;

inline int total_degree(const ExpVec& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

// Graded lexicographic ordering; the canonical term order for storage and
// serialization.
struct GradedLexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

// Sparse multivariate polynomial over Rational, truncated by total degree.
// All arithmetic is exact; terms past the degree bound are discarded.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(UniversePtr uni, Truncation trunc)
      : uni_(std::move(uni)), trunc_(trunc) {}

  static TruncatedSeries constant(UniversePtr uni, Truncation trunc,
                                  const Rational& c);
  static TruncatedSeries variable(UniversePtr uni, Truncation trunc, int var);
  static TruncatedSeries monomial(UniversePtr uni, Truncation trunc,
                                  const ExpVec& exp, const Rational& c);

  const UniversePtr& universe() const { return uni_; }
  const Truncation& truncation() const { return trunc_; }
  const std::map<ExpVec, Rational, GradedLexLess>& terms() const {
    return terms_;
  }

  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const ExpVec& exp) const;
  Rational constant_term() const;

  void add_term(const ExpVec& exp, const Rational& c);

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Rational& c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    a += b;
    return a;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    a -= b;
    return a;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a,
                                   const TruncatedSeries& b);
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) {
    a *= c;
    return a;
  }
  friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) {
    a *= c;
    return a;
  }
  friend TruncatedSeries operator-(TruncatedSeries a) {
    a *= Rational(-1);
    return a;
  }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

  // Drops every term of total degree > bound (used when comparing only the
  // exactly-computed range of a truncated identity).
  TruncatedSeries degree_limited(int bound) const;
  int max_degree() const;  // -1 for the zero series

  std::string str() const;  // canonical text form, graded-lex order

 private:
  void check_compatible(const TruncatedSeries& o) const;
  UniversePtr uni_;
  Truncation trunc_{};
  std::map<ExpVec, Rational, GradedLexLess> terms_;
};

TruncatedSeries derive(const TruncatedSeries& a, int var);

// Exact composition: each mapped variable is replaced by the given series
// (living in the target universe); unmapped variables must exist verbatim in
// the target universe.  Truncation of the result is `trunc` over `target`.
TruncatedSeries substitute(const TruncatedSeries& a,
                           const std::map<int, TruncatedSeries>& images,
                           UniversePtr target, Truncation trunc);

// Affine convenience: var -> target-var + constant, everything else renamed
// by name.  Covers the dilaton shift q_1 -> t_1 - 1.
TruncatedSeries substitute_affine(const TruncatedSeries& a,
                                  const std::map<int, std::pair<int, Rational>>& images,
                                  UniversePtr target);

nlohmann::ordered_json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const nlohmann::json& j);

}  // namespace gwq
