#include "gwq/hspace.hpp"

#include <stdexcept>

namespace gwq {

namespace {
Rational parity_sign(int k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }
}  // namespace

TruncatedSeries HElement::zero_series() const {
  return TruncatedSeries(uni_, trunc_);
}

TruncatedSeries HElement::component(int k, int mu) const {
  auto it = coeff_.find(k);
  if (it == coeff_.end()) return zero_series();
  return it->second.at(mu);
}

void HElement::add(int z_pow, int mu, const TruncatedSeries& c) {
  if (mu < 0 || mu >= alg_->dim())
    throw std::invalid_argument("basis index out of range");
  if (!same_universe(c.universe(), uni_))
    throw std::invalid_argument("coefficient universe mismatch");
  auto it = coeff_.find(z_pow);
  if (it == coeff_.end()) {
    if (c.is_zero()) return;
    it = coeff_.emplace(z_pow, std::vector<TruncatedSeries>(alg_->dim(),
                                                            zero_series()))
             .first;
  }
  it->second[mu] += c;
  prune(z_pow);
}

void HElement::add(int z_pow, int mu, const Rational& c) {
  add(z_pow, mu, TruncatedSeries::constant(uni_, trunc_, c));
}

void HElement::add_scaled(const HElement& o, const Rational& c) {
  if (!(*alg_ == *o.alg_))
    throw std::invalid_argument("algebra mismatch");
  for (const auto& [k, vec] : o.coeff_)
    for (int mu = 0; mu < alg_->dim(); ++mu)
      if (!vec[mu].is_zero()) add(k, mu, vec[mu] * c);
}

void HElement::prune(int z_pow) {
  auto it = coeff_.find(z_pow);
  if (it == coeff_.end()) return;
  for (const auto& s : it->second)
    if (!s.is_zero()) return;
  coeff_.erase(it);
}

HElement HElement::plus_part() const {
  HElement out(alg_, uni_, trunc_);
  for (const auto& [k, vec] : coeff_)
    if (k >= 0) out.coeff_.emplace(k, vec);
  return out;
}

HElement HElement::minus_part() const {
  HElement out(alg_, uni_, trunc_);
  for (const auto& [k, vec] : coeff_)
    if (k < 0) out.coeff_.emplace(k, vec);
  return out;
}

HElement operator+(const HElement& a, const HElement& b) {
  HElement out = a;
  out.add_scaled(b, 1);
  return out;
}

HElement operator-(const HElement& a, const HElement& b) {
  HElement out = a;
  out.add_scaled(b, -1);
  return out;
}

HElement operator*(const HElement& a, const Rational& c) {
  HElement out(a.alg_, a.uni_, a.trunc_);
  out.add_scaled(a, c);
  return out;
}

bool operator==(const HElement& a, const HElement& b) {
  if (!(*a.alg_ == *b.alg_)) return false;
  return (a - b).is_zero();
}

TruncatedSeries omega(const HElement& f, const HElement& g) {
  if (!(f.algebra() == g.algebra()))
    throw std::invalid_argument("omega: algebra mismatch");
  // Coefficient of z^{-1} in (f(-z), g(z)): pairs z^a from f with z^b from g,
  // a + b = -1, with the sign (-1)^a from evaluating f at -z.
  TruncatedSeries res = f.zero_series();
  for (const auto& [a, fa] : f.coefficients()) {
    auto it = g.coefficients().find(-1 - a);
    if (it == g.coefficients().end()) continue;
    res += parity_sign(a) * frobenius_pair(fa, it->second, f.algebra());
  }
  return res;
}

DarbouxVector to_darboux(const HElement& f) {
  const auto& alg = f.algebra();
  const int n = alg.dim();
  DarbouxVector d;
  int kmax = std::max(f.z_max(), 0);
  int ldepth = std::max(-f.z_min(), 0);
  d.q.assign(kmax + 1, std::vector<TruncatedSeries>(n, f.zero_series()));
  d.p.assign(ldepth, std::vector<TruncatedSeries>(n, f.zero_series()));
  for (const auto& [k, vec] : f.coefficients()) {
    if (k >= 0) {
      for (int mu = 0; mu < n; ++mu) d.q[k][mu] = vec[mu];
    } else {
      // coefficient of z^{-1-l} is (-1)^{l+1} sum_nu p^nu_l phi^nu, so
      // p^nu_l = (-1)^{l+1} sum_lambda g_{nu lambda} c^lambda.
      int l = -k - 1;
      Rational sgn = parity_sign(l + 1);
      for (int nu = 0; nu < n; ++nu) {
        TruncatedSeries s = f.zero_series();
        for (int lam = 0; lam < n; ++lam) {
          if (alg.pairing()[nu][lam] == 0) continue;
          s += vec[lam] * alg.pairing()[nu][lam];
        }
        d.p[l][nu] = s * sgn;
      }
    }
  }
  return d;
}

HElement from_darboux(const DarbouxVector& d, const FrobeniusAlgebra& alg,
                      UniversePtr uni, Truncation trunc) {
  HElement f(&alg, std::move(uni), trunc);
  const int n = alg.dim();
  for (int k = 0; k < static_cast<int>(d.q.size()); ++k)
    for (int mu = 0; mu < n; ++mu) f.add(k, mu, d.q[k].at(mu));
  for (int l = 0; l < static_cast<int>(d.p.size()); ++l) {
    Rational sgn = parity_sign(l + 1);
    for (int nu = 0; nu < n; ++nu)
      for (int lam = 0; lam < n; ++lam) {
        if (alg.pairing_inverse()[nu][lam] == 0) continue;
        f.add(-1 - l, lam,
              d.p[l].at(nu) * (sgn * alg.pairing_inverse()[nu][lam]));
      }
  }
  return f;
}

HElement dilaton_shift(const HElement& t) {
  if (t.z_min() < 0)
    throw std::invalid_argument("dilaton shift expects an element of H_+");
  HElement out = t;
  out.add(1, 0, Rational(-1));
  return out;
}

HElement dilaton_unshift(const HElement& q) {
  HElement out = q;
  out.add(1, 0, Rational(1));
  return out;
}

nlohmann::ordered_json helement_to_json(const HElement& f) {
  nlohmann::ordered_json j;
  j["vars"] = f.universe() ? f.universe()->names() : std::vector<std::string>{};
  j["trunc"] = {{"deg", f.truncation().degree},
                {"depth", f.truncation().depth},
                {"genus", f.truncation().genus}};
  nlohmann::ordered_json zs = nlohmann::ordered_json::array();
  for (const auto& [k, vec] : f.coefficients()) {
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const auto& s : vec) comps.push_back(series_to_json(s)["terms"]);
    zs.push_back({{"z", k}, {"components", comps}});
  }
  j["coeffs"] = std::move(zs);
  return j;
}

HElement helement_from_json(const nlohmann::json& j,
                            const FrobeniusAlgebra& alg) {
  auto uni = VarUniverse::make(j.at("vars").get<std::vector<std::string>>());
  Truncation tr{j.at("trunc").at("deg").get<int>(),
                j.at("trunc").at("depth").get<int>(),
                j.at("trunc").at("genus").get<int>()};
  HElement f(&alg, uni, tr);
  for (const auto& zc : j.at("coeffs")) {
    int k = zc.at("z").get<int>();
    const auto& comps = zc.at("components");
    if (static_cast<int>(comps.size()) != alg.dim())
      throw std::invalid_argument("component count does not match algebra");
    for (int mu = 0; mu < alg.dim(); ++mu) {
      TruncatedSeries s(uni, tr);
      for (const auto& t : comps[mu]) {
        ExpVec e(uni->size(), 0);
        for (const auto& [name, pow] : t.at("exp").items())
          e[uni->index_or_throw(name)] = pow.get<int>();
        s.add_term(e, rational_from_string(t.at("coeff").get<std::string>()));
      }
      f.add(k, mu, s);
    }
  }
  return f;
}

}  // namespace gwq
