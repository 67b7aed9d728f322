#include "gwq/localization.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace gwq {

EquivariantClass EquivariantClass::monomial(UniversePtr uni, Truncation tr,
                                            int nilpotency, int z_pow,
                                            int psi_pow, const Rational& c) {
  EquivariantClass out(uni, tr, nilpotency);
  out.add(z_pow, psi_pow, c);
  return out;
}

TruncatedSeries EquivariantClass::coefficient(int z_pow, int psi_pow) const {
  auto it = terms_.find({z_pow, psi_pow});
  if (it != terms_.end()) return it->second;
  return TruncatedSeries(uni_, tr_);
}

void EquivariantClass::add(int z_pow, int psi_pow, const TruncatedSeries& s) {
  if (psi_pow < 0) throw std::invalid_argument("negative psi power");
  if (psi_pow >= nilp_ || s.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace({z_pow, psi_pow}, s);
  if (!fresh) {
    it->second += s;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void EquivariantClass::add(int z_pow, int psi_pow, const Rational& c) {
  add(z_pow, psi_pow, TruncatedSeries::constant(uni_, tr_, c));
}

EquivariantClass operator+(const EquivariantClass& a,
                           const EquivariantClass& b) {
  EquivariantClass out = a;
  out.nilp_ = std::min(a.nilp_, b.nilp_);
  for (auto it = out.terms_.begin(); it != out.terms_.end();) {
    it = (it->first.second >= out.nilp_) ? out.terms_.erase(it)
                                         : std::next(it);
  }
  for (const auto& [key, s] : b.terms_) out.add(key.first, key.second, s);
  return out;
}

EquivariantClass operator-(const EquivariantClass& a,
                           const EquivariantClass& b) {
  return a + b * Rational(-1);
}

EquivariantClass operator*(const EquivariantClass& a,
                           const EquivariantClass& b) {
  EquivariantClass out(a.uni_, a.tr_, std::min(a.nilp_, b.nilp_));
  for (const auto& [ka, sa] : a.terms_)
    for (const auto& [kb, sb] : b.terms_)
      out.add(ka.first + kb.first, ka.second + kb.second, sa * sb);
  return out;
}

EquivariantClass operator*(const EquivariantClass& a, const Rational& c) {
  EquivariantClass out(a.uni_, a.tr_, a.nilp_);
  if (c == 0) return out;
  for (const auto& [k, s] : a.terms_) out.add(k.first, k.second, s * c);
  return out;
}

bool operator==(const EquivariantClass& a, const EquivariantClass& b) {
  return (a - b).is_zero();
}

std::string EquivariantClass::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, s] : terms_) {
    os << (first ? "" : " + ") << "z^" << k.first << "*psi^" << k.second
       << "*(" << s.str() << ")";
    first = false;
  }
  return os.str();
}

EquivariantClass euler_inverse(const EquivariantClass& e) {
  // split off the psi-degree-zero part, required to be c * z^a
  int lead_z = 0;
  Rational lead_c = 0;
  EquivariantClass rest = e;
  for (const auto& [k, s] : e.terms_) {
    if (k.second != 0) continue;
    if (lead_c != 0 || s.max_degree() > 0)
      throw std::invalid_argument("leading part is not a single z-monomial");
    lead_z = k.first;
    lead_c = s.constant_term();
  }
  if (lead_c == 0)
    throw std::invalid_argument("euler class has no invertible leading part");
  rest.terms_.erase({lead_z, 0});

  EquivariantClass lead_inv = EquivariantClass::monomial(
      e.uni_, e.tr_, e.nilp_, -lead_z, 0, Rational(1) / lead_c);
  // 1/(L + R) = L^{-1} sum_m (-R L^{-1})^m, finite by nilpotency of R
  EquivariantClass r = rest * lead_inv;
  EquivariantClass out = lead_inv;
  EquivariantClass power = lead_inv;
  for (int m = 1; m < e.nilp_; ++m) {
    power = power * r * Rational(-1);
    if (power.is_zero()) break;
    out = out + power;
  }
  return out;
}

HElement fixed_locus_contribution(FixedLocusKind kind, int n,
                                  const HElement& t,
                                  const CorrelatorTable& table,
                                  const ConeConfig& cfg) {
  const FrobeniusAlgebra& alg = t.algebra();
  const Matrix& ginv = alg.pairing_inverse();
  HElement out(&alg, t.universe(), t.truncation());

  if (kind == FixedLocusKind::kExceptionalZero) {
    // the fixed map collapsing everything to 0: class 1, normal bundle
    // euler class -1/z after the twist by the (-z) insertion factor
    out.add(1, 0, Rational(-1));
    return out;
  }
  if (kind == FixedLocusKind::kExceptionalOne) {
    // one marked point over infinity; psi at the attaching node restricts to
    // z, and the euler factor (-z) cancels against the insertion weight
    EquivariantClass minus_z = EquivariantClass::monomial(
        t.universe(), t.truncation(), 2, 1, 0, -1);
    EquivariantClass weight = minus_z * euler_inverse(minus_z);  // = 1
    Rational w = weight.coefficient(0, 0).constant_term();
    for (const auto& [k, comps] : t.coefficients()) {
      for (int a = 0; a < alg.dim(); ++a) {
        if (comps[a].is_zero()) continue;
        // t_k psi^k at the node, psi -> z
        out.add(k, a, comps[a] * w);
      }
    }
    return out;
  }

  if (n < 2) throw std::invalid_argument("general loci need n >= 2");
  // vertex over 0 carrying n inputs and the attaching node; the virtual
  // normal bundle contributes (-z)(-z - psi) at the node, and the extra
  // (-z) insertion weight leaves the kernel (-z) / ((-z)(-z - psi))
  const int nilp = std::min(n - 1, cfg.z_depth);
  if (nilp <= 0) return out;
  EquivariantClass en(t.universe(), t.truncation(), nilp);
  en.add(2, 0, Rational(1));   // (-z)(-z) = z^2
  en.add(1, 1, Rational(1));   // (-z)(-psi) = z psi
  EquivariantClass kernel =
      EquivariantClass::monomial(t.universe(), t.truncation(), nilp, 1, 0,
                                 Rational(-1)) *
      euler_inverse(en);

  struct Slot {
    int k, alpha;
    TruncatedSeries coeff;
  };
  std::vector<Slot> slots;
  for (const auto& [k, comps] : t.coefficients()) {
    for (int a = 0; a < alg.dim(); ++a) {
      if (!comps[a].is_zero()) slots.push_back({k, a, comps[a]});
    }
  }

  std::vector<int> chosen;
  std::function<void(int, const TruncatedSeries&)> rec =
      [&](int lo, const TruncatedSeries& prod) {
        if (static_cast<int>(chosen.size()) == n) {
          Insertions base;
          for (int i : chosen) base.push_back({slots[i].k, slots[i].alpha});
          Rational aut = 1;
          {
            int run = 1;
            for (size_t i = 1; i < chosen.size(); ++i) {
              if (chosen[i] == chosen[i - 1])
                aut *= ++run;
              else
                run = 1;
            }
          }
          for (int m = 0; m < nilp; ++m) {
            TruncatedSeries w = kernel.coefficient(-1 - m, m);
            Rational wc = w.constant_term();
            if (wc == 0) continue;
            for (int nu = 0; nu < alg.dim(); ++nu) {
              Insertions ins = base;
              ins.push_back({m, nu});
              Rational corr = table.get(0, 0, ins);
              if (corr == 0) continue;
              for (int lam = 0; lam < alg.dim(); ++lam) {
                Rational c = ginv[nu][lam] * corr * wc / aut;
                if (c != 0) out.add(-1 - m, lam, prod * c);
              }
            }
          }
          return;
        }
        for (int i = lo; i < static_cast<int>(slots.size()); ++i) {
          TruncatedSeries next = prod * slots[i].coeff;
          if (next.is_zero()) continue;
          chosen.push_back(i);
          rec(i, next);
          chosen.pop_back();
        }
      };
  rec(0, TruncatedSeries::constant(t.universe(), t.truncation(), 1));
  return out;
}

LocalizationBreakdown ev_infty_push(const HElement& t,
                                    const CorrelatorTable& table,
                                    const ConeConfig& cfg) {
  if (t.z_min() < 0)
    throw std::invalid_argument("input must lie in H_plus");
  for (const auto& [k, comps] : t.coefficients()) {
    for (const auto& s : comps) {
      if (s.constant_term() != 0)
        throw std::invalid_argument(
            "input must have vanishing constant terms (formal neighborhood)");
    }
  }
  LocalizationBreakdown out;
  out.exceptional_zero = fixed_locus_contribution(
      FixedLocusKind::kExceptionalZero, 0, t, table, cfg);
  out.exceptional_one = fixed_locus_contribution(FixedLocusKind::kExceptionalOne,
                                                 1, t, table, cfg);
  out.total = out.exceptional_zero + out.exceptional_one;
  const int n_cap = std::min(cfg.n_max, t.truncation().degree);
  for (int n = 2; n <= n_cap; ++n) {
    out.general.push_back(fixed_locus_contribution(FixedLocusKind::kGeneral, n,
                                                   t, table, cfg));
    out.total = out.total + out.general.back();
  }
  return out;
}

TheoremReport theorem1_verify(const HElement& t, const CorrelatorTable& table,
                              const ConeConfig& cfg) {
  TheoremReport rep;
  LocalizationBreakdown push = ev_infty_push(t, table, cfg);
  HElement J = cone_point(t, table, cfg);
  if (!(push.total == J)) {
    rep.ok = false;
    rep.detail = "pushforward differs from the cone point";
    return rep;
  }
  HElement shifted = dilaton_shift(t);
  if (!(push.exceptional_zero + push.exceptional_one == shifted)) {
    rep.ok = false;
    rep.detail = "exceptional loci do not reproduce -z + t(z)";
    return rep;
  }
  rep.detail = "pushforward equals the cone point; exceptional loci give "
               "-z + t(z)";
  return rep;
}

}  // namespace gwq
