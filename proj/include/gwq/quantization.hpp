#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "gwq/hspace.hpp"

namespace gwq {

// z-power basis element phi_mu z^k.
struct BasisKey {
  int k;   // z power
  int mu;  // cohomology index
  auto operator<=>(const BasisKey&) const = default;
};

using LinComb = std::map<BasisKey, Rational>;  // rational combination of basis

// Linear infinitesimal symplectic transformation, stored as its matrix on the
// z-power basis over a domain window.  Images may reach outside the window;
// applying the operator to a vector supported outside the domain is an error.
class InfSymplectic {
 public:
  InfSymplectic(const FrobeniusAlgebra* alg, int kmin, int kmax)
      : alg_(alg), kmin_(kmin), kmax_(kmax) {}

  const FrobeniusAlgebra& algebra() const { return *alg_; }
  int kmin() const { return kmin_; }
  int kmax() const { return kmax_; }

  void set_image(BasisKey b, LinComb image);
  bool defined_on(BasisKey b) const { return act_.count(b) > 0; }
  const LinComb& image(BasisKey b) const;
  const std::map<BasisKey, LinComb>& action() const { return act_; }

  LinComb apply(const LinComb& v) const;  // throws if v leaves the domain
  HElement apply(const HElement& f) const;

  friend InfSymplectic operator*(const InfSymplectic& a, const Rational& c);
  friend InfSymplectic operator-(const InfSymplectic& a,
                                 const InfSymplectic& b);

 private:
  const FrobeniusAlgebra* alg_;
  int kmin_, kmax_;
  std::map<BasisKey, LinComb> act_;
};

// Omega on basis elements: Omega(phi_mu z^a, phi_nu z^b) =
// (-1)^a g_{mu nu} [a + b == -1].
Rational omega_basis(const FrobeniusAlgebra& alg, BasisKey a, BasisKey b);
Rational omega_lincomb(const FrobeniusAlgebra& alg, const LinComb& a,
                       const LinComb& b);

// Omega(Af, g) + Omega(f, Ag) = 0 on all domain basis pairs.
bool is_infinitesimally_symplectic(const InfSymplectic& A);

// Composition AB restricted to the basis vectors where B's image stays inside
// A's domain; keys whose composite leaves the window are simply absent.
InfSymplectic compose_partial(const InfSymplectic& a, const InfSymplectic& b);
InfSymplectic commutator(const InfSymplectic& a, const InfSymplectic& b);

// Darboux coordinate label: kind 0 = q^mu_k, kind 1 = p^nu_l.
struct DarbouxKey {
  int kind;
  int k;
  int mu;
  auto operator<=>(const DarbouxKey&) const = default;
};

// Quadratic form in Darboux coordinates; map value is the polynomial
// coefficient of the (canonically ordered) quadratic monomial.
class QuadraticForm {
 public:
  void add(DarbouxKey a, DarbouxKey b, const Rational& c);
  Rational coefficient(DarbouxKey a, DarbouxKey b) const;
  const std::map<std::pair<DarbouxKey, DarbouxKey>, Rational>& terms() const {
    return terms_;
  }
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
  std::string str() const;

 private:
  std::map<std::pair<DarbouxKey, DarbouxKey>, Rational> terms_;
};

// h_A(f) = (1/2) Omega(Af, f) expanded over the Darboux basis with q-indices
// 0..q_max and p-indices 0..p_depth-1.  Throws if A is undefined on a needed
// basis vector (window too small); nothing is silently truncated.
QuadraticForm quadratic_hamiltonian(const InfSymplectic& A, int q_max,
                                    int p_depth);

// Normal-ordered polynomial differential operator: sum of
// c * hbar^h * (monomial in variables) * (monomial in derivatives).
struct DiffOpTerm {
  Rational c;
  int hbar = 0;
  std::map<int, int> mono;   // var index -> exponent
  std::map<int, int> deriv;  // var index -> order
};

class DiffOperator {
 public:
  DiffOperator() = default;
  explicit DiffOperator(UniversePtr uni) : uni_(std::move(uni)) {}

  const UniversePtr& universe() const { return uni_; }
  const std::vector<DiffOpTerm>& terms() const { return terms_; }

  void add_term(DiffOpTerm t);
  void normalize();  // merge like terms, canonical order, drop zeros

  friend DiffOperator operator+(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator-(const DiffOperator& a, const DiffOperator& b);
  friend DiffOperator operator*(const DiffOperator& a, const Rational& c);
  friend bool operator==(const DiffOperator& a, const DiffOperator& b);

  std::string str() const;

 private:
  UniversePtr uni_;
  std::vector<DiffOpTerm> terms_;
};

// Variable universes for the q- and t-pictures over an algebra: names q{k}
// (resp. t{k}) for a one-dimensional algebra, q{k}_{mu} otherwise.
UniversePtr q_universe(const FrobeniusAlgebra& alg, int depth);
UniversePtr t_universe(const FrobeniusAlgebra& alg, int depth);
int coord_var(const VarUniverse& uni, const FrobeniusAlgebra& alg,
              const std::string& prefix, int k, int mu);

// Termwise quantization rules qq -> qq/hbar, pq -> q d/dq, pp -> hbar dd.
// Monomials whose q-level exceeds the universe depth are rejected.
DiffOperator quantize(const QuadraticForm& h, const FrobeniusAlgebra& alg,
                      UniversePtr q_uni);

// Rewrites an operator in q-variables through the dilaton shift
// q(z) = t(z) - z, i.e. q_1^{(id)} = t_1^{(id)} - 1.
DiffOperator dilaton_shift_operator(const DiffOperator& op,
                                    const FrobeniusAlgebra& alg,
                                    UniversePtr t_uni);

// D = exp(sum_g hbar^{g-1} F^g), stored by genus component.
struct GenusExpandedPotential {
  std::vector<TruncatedSeries> F;  // F[g]
  int gmax() const { return static_cast<int>(F.size()) - 1; }
};

// Logarithmic action (op D)/D, expanded in hbar.  Keys are hbar exponents;
// only the grades -1 .. gmax-1, which are exact given F^0..F^gmax, are
// returned.
std::map<int, TruncatedSeries> apply(const DiffOperator& op,
                                     const GenusExpandedPotential& D);

DiffOperator compose(const DiffOperator& a, const DiffOperator& b);
DiffOperator commutator(const DiffOperator& a, const DiffOperator& b);

}  // namespace gwq
