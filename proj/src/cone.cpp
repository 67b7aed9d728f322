#include "gwq/cone.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace gwq {

TruncatedSeries genus0_potential(const CorrelatorTable& table,
                                 UniversePtr t_uni, Truncation tr,
                                 bool shift_to_q) {
  GenusExpandedPotential D = assemble_potential(table, t_uni, tr, 0);
  if (!shift_to_q) return D.F[0];
  const FrobeniusAlgebra& alg = table.algebra();
  const int depth = t_uni->size() / alg.dim() - 1;
  UniversePtr q_uni = q_universe(alg, depth);
  std::map<int, std::pair<int, Rational>> images;
  for (int k = 0; k <= depth; ++k) {
    for (int mu = 0; mu < alg.dim(); ++mu) {
      int tv = coord_var(*t_uni, alg, "t", k, mu);
      int qv = coord_var(*q_uni, alg, "q", k, mu);
      images[tv] = {qv, (k == 1 && mu == 0) ? Rational(1) : Rational(0)};
    }
  }
  return substitute_affine(D.F[0], images, q_uni);
}

HElement cone_point(const HElement& t, const CorrelatorTable& table,
                    const ConeConfig& cfg) {
  const FrobeniusAlgebra& alg = t.algebra();
  const Matrix& ginv = alg.pairing_inverse();
  if (t.z_min() < 0)
    throw std::invalid_argument("input must lie in H_plus");
  for (const auto& [k, comps] : t.coefficients()) {
    for (const auto& s : comps) {
      if (s.constant_term() != 0)
        throw std::invalid_argument(
            "input must have vanishing constant terms (formal neighborhood)");
    }
  }

  HElement J = dilaton_shift(t);

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

  const int n_cap = std::min(cfg.n_max, t.truncation().degree);

  // enumerate multisets of slots i1 <= ... <= in with the running product
  std::vector<int> chosen;
  std::function<void(int, const TruncatedSeries&)> rec =
      [&](int lo, const TruncatedSeries& prod) {
        const int n = static_cast<int>(chosen.size());
        if (n >= 2) {  // one-point classes of n+1 >= 3 marked points
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
          for (int m = 0; m < cfg.z_depth; ++m) {
            for (int nu = 0; nu < alg.dim(); ++nu) {
              Insertions ins = base;
              ins.push_back({m, nu});
              Rational corr = table.get(0, 0, ins);
              if (corr == 0) continue;
              Rational sign = (m % 2 == 0) ? -1 : 1;  // (-1)^{m+1}
              for (int lam = 0; lam < alg.dim(); ++lam) {
                Rational c = ginv[nu][lam] * corr * sign / aut;
                if (c != 0) J.add(-1 - m, lam, prod * c);
              }
            }
          }
        }
        if (n == n_cap) return;
        for (int i = lo; i < static_cast<int>(slots.size()); ++i) {
          TruncatedSeries next = prod * slots[i].coeff;
          if (next.is_zero()) continue;
          chosen.push_back(i);
          rec(i, next);
          chosen.pop_back();
        }
      };
  rec(0, TruncatedSeries::constant(t.universe(), t.truncation(), 1));
  return J;
}

ConeReport check_on_cone(const HElement& f, const CorrelatorTable& table,
                         int deg_assert) {
  const FrobeniusAlgebra& alg = f.algebra();
  ConeReport rep;

  DarbouxVector dv = to_darboux(f);
  const int q_top = static_cast<int>(dv.q.size()) - 1;
  const int p_depth = static_cast<int>(dv.p.size());
  if (p_depth == 0) {
    rep.detail = "element has no negative z part; nothing to check";
    return rep;
  }

  const int K = std::max(q_top, p_depth);
  UniversePtr t_uni = t_universe(alg, K);
  Truncation tr_F{deg_assert + 1, K, 0};
  TruncatedSeries F = genus0_potential(table, t_uni, tr_F);

  // coordinates of the point: t(z) = q(z) + z
  std::map<int, TruncatedSeries> images;
  for (int k = 0; k <= K; ++k) {
    for (int mu = 0; mu < alg.dim(); ++mu) {
      TruncatedSeries img = (k <= q_top && !dv.q[k][mu].is_zero())
                                ? dv.q[k][mu]
                                : f.zero_series();
      if (k == 1 && mu == 0) img += TruncatedSeries::constant(
                                 f.universe(), f.truncation(), 1);
      if (img.constant_term() != 0) {
        rep.ok = false;
        rep.detail = "coordinates leave the formal neighborhood";
        return rep;
      }
      images[coord_var(*t_uni, alg, "t", k, mu)] = std::move(img);
    }
  }

  for (int l = 0; l < p_depth; ++l) {
    for (int nu = 0; nu < alg.dim(); ++nu) {
      int v = coord_var(*t_uni, alg, "t", l, nu);
      TruncatedSeries expected =
          substitute(derive(F, v), images, f.universe(), f.truncation());
      TruncatedSeries diff = expected - dv.p[l][nu];
      if (!diff.degree_limited(deg_assert).is_zero()) {
        rep.ok = false;
        std::ostringstream os;
        os << "p mismatch at l=" << l << " nu=" << nu << ": residual "
           << diff.degree_limited(deg_assert).str();
        rep.detail = os.str();
        return rep;
      }
    }
  }
  std::ostringstream os;
  os << "all p-coordinates match dF/dq through degree " << deg_assert;
  rep.detail = os.str();
  return rep;
}

ConeReport cone_homogeneity_check(const CorrelatorTable& table,
                                  UniversePtr t_uni, Truncation tr) {
  const FrobeniusAlgebra& alg = table.algebra();
  TruncatedSeries F = genus0_potential(table, t_uni, tr);
  TruncatedSeries euler(t_uni, tr);
  for (int v = 0; v < t_uni->size(); ++v) {
    TruncatedSeries dF = derive(F, v);
    euler += TruncatedSeries::variable(t_uni, tr, v) * dF;
  }
  euler -= derive(F, coord_var(*t_uni, alg, "t", 1, 0));
  TruncatedSeries residual = (euler - F * Rational(2))
                                 .degree_limited(tr.degree - 1);
  ConeReport rep;
  if (!residual.is_zero()) {
    rep.ok = false;
    rep.detail = "Euler identity residual: " + residual.str();
    return rep;
  }
  rep.detail =
      "scaling certified: lambda in {0,1} fixes the cone directly and the "
      "Euler identity sum (t - delta) dF/dt = 2F holds through degree " +
      std::to_string(tr.degree - 1);
  return rep;
}

}  // namespace gwq
