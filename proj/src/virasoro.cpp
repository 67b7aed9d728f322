#include "gwq/virasoro.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gwq {

Insertions make_insertions(std::vector<int> ks) {
  Insertions out;
  out.reserve(ks.size());
  for (int k : ks) out.push_back({k, 0});
  std::sort(out.begin(), out.end());
  return out;
}

Rational aut_order(const Insertions& ins) {
  Rational out = 1;
  int run = 1;
  for (size_t i = 1; i < ins.size(); ++i) {
    if (ins[i] == ins[i - 1])
      out *= ++run;
    else
      run = 1;
  }
  // out so far is prod of 2*3*...*mult per run == prod mult!
  return out;
}

void CorrelatorTable::set(int g, int d, Insertions ins, Rational v) {
  std::sort(ins.begin(), ins.end());
  vals_[{g, d, std::move(ins)}] = std::move(v);
}

static bool point_dimension_ok(const FrobeniusAlgebra& alg, int g, int d,
                               const Insertions& ins) {
  if (alg.dim() != 1) return true;  // no check available
  if (d != 0) return false;
  int sum = 0;
  for (const auto& [k, a] : ins) sum += k;
  return sum == 3 * g - 3 + static_cast<int>(ins.size());
}

Rational CorrelatorTable::get(int g, int d, const Insertions& ins) const {
  const int n = static_cast<int>(ins.size());
  if (g < 0 || 2 * g - 2 + n <= 0) return 0;
  Insertions key = ins;
  std::sort(key.begin(), key.end());
  if (!point_dimension_ok(*alg_, g, d, key)) return 0;
  auto it = vals_.find({g, d, key});
  if (it == vals_.end()) {
    std::ostringstream os;
    os << "correlator not tabulated: g=" << g << " d=" << d << " <";
    for (const auto& [k, a] : key) os << " tau_" << k << (a ? "'" : "");
    os << " >";
    throw std::out_of_range(os.str());
  }
  return it->second;
}

bool CorrelatorTable::has(int g, int d, const Insertions& ins) const {
  Insertions key = ins;
  std::sort(key.begin(), key.end());
  return vals_.count({g, d, key}) > 0;
}

void CorrelatorTable::set_point(int g, std::vector<int> ks, Rational v) {
  set(g, 0, make_insertions(std::move(ks)), std::move(v));
}

Rational CorrelatorTable::get_point(int g, std::vector<int> ks) const {
  return get(g, 0, make_insertions(std::move(ks)));
}

InfSymplectic virasoro_generator(int n, int kmin, int kmax) {
  if (n < -1) throw std::invalid_argument("n >= -1 required");
  InfSymplectic A(&FrobeniusAlgebra::point(), kmin, kmax);
  for (int k = kmin; k <= kmax; ++k) {
    if (n == -1) {
      A.set_image({k, 0}, {{{k - 1, 0}, 1}});
    } else {
      A.set_image({k, 0},
                  {{{k + n, 0}, half_integer_gamma_ratio(k, n + 1)}});
    }
  }
  return A;
}

DiffOperator quantized_virasoro(int n, int depth) {
  InfSymplectic A = virasoro_generator(n, -(depth + 1), depth);
  QuadraticForm h = quadratic_hamiltonian(A, depth, depth + 1);
  const FrobeniusAlgebra& alg = FrobeniusAlgebra::point();
  DiffOperator op = quantize(h, alg, q_universe(alg, depth));
  return dilaton_shift_operator(op, alg, t_universe(alg, depth));
}

DiffOperator virasoro_constraint_operator(int n, int depth) {
  DiffOperator op = quantized_virasoro(n, depth);
  if (n == 0) {
    DiffOpTerm c;
    c.c = Rational(-1, 16);
    op.add_term(std::move(c));
    op.normalize();
  }
  return op;
}

namespace {

using Multiset = std::map<int, int>;  // level -> multiplicity

Rational aut_of(const Multiset& m) {
  Rational out = 1;
  for (const auto& [k, c] : m)
    for (int i = 2; i <= c; ++i) out *= i;
  return out;
}

std::vector<int> to_vector(const Multiset& m) {
  std::vector<int> out;
  for (const auto& [k, c] : m)
    for (int i = 0; i < c; ++i) out.push_back(k);
  return out;
}

std::vector<int> with_extra(const Multiset& m, int extra) {
  std::vector<int> out = to_vector(m);
  out.push_back(extra);
  return out;
}

std::vector<int> with_extra(const Multiset& m, int e1, int e2) {
  std::vector<int> out = to_vector(m);
  out.push_back(e1);
  out.push_back(e2);
  return out;
}

int level_of(const DiffOperator& op, int var) {
  // point target: variable name "t{k}" or "q{k}"
  return std::stoi(op.universe()->name(var).substr(1));
}

// descending partitions of `sum` into exactly `n` parts >= 0
void enumerate_multisets(int sum, int n, int max_part, std::vector<int>& cur,
                         const std::function<void(const std::vector<int>&)>& f) {
  if (n == 0) {
    if (sum == 0) f(cur);
    return;
  }
  int hi = std::min(sum, max_part);
  for (int p = hi; p >= 0; --p) {
    if (p * n < sum) break;
    cur.push_back(p);
    enumerate_multisets(sum - p, n - 1, p, cur, f);
    cur.pop_back();
  }
}

// One linear equation for the unknown bracket <tau_S>_g, extracted from the
// constraint operator with n = max(S) - 1 applied at hbar grade g - 1 and
// monomial t^{S \ max}.
Rational solve_one(const DiffOperator& op, const CorrelatorTable& table, int g,
                   const std::vector<int>& S) {
  const int m = *std::max_element(S.begin(), S.end());
  Multiset M;
  for (int k : S) M[k] += 1;
  M[m] -= 1;
  if (M[m] == 0) M.erase(m);

  std::vector<int> Svec = S;
  std::sort(Svec.begin(), Svec.end());

  Rational lead = 0, rest = 0;
  for (const auto& t : op.terms()) {
    // monomial part must divide t^M
    Multiset Mp = M;
    bool fits = true;
    for (const auto& [v, e] : t.mono) {
      int lvl = level_of(op, v);
      auto it = Mp.find(lvl);
      if (it == Mp.end() || it->second < e) {
        fits = false;
        break;
      }
      it->second -= e;
      if (it->second == 0) Mp.erase(it);
    }
    if (!fits) continue;
    const Rational autMp = aut_of(Mp);

    int order = 0;
    for (const auto& [v, e] : t.deriv) order += e;

    if (order == 0) {
      if (t.hbar == g - 1 && Mp.empty()) rest += t.c;
    } else if (order == 1) {
      const int b = level_of(op, t.deriv.begin()->first);
      const int gp = g - t.hbar;
      if (gp < 0) continue;
      std::vector<int> ref = with_extra(Mp, b);
      std::sort(ref.begin(), ref.end());
      if (gp == g && ref == Svec)
        lead += t.c / autMp;
      else
        rest += t.c * table.get_point(gp, ref) / autMp;
    } else if (order == 2) {
      int b1, b2;
      if (t.deriv.size() == 1) {
        b1 = b2 = level_of(op, t.deriv.begin()->first);
      } else {
        auto it = t.deriv.begin();
        b1 = level_of(op, it->first);
        b2 = level_of(op, std::next(it)->first);
      }
      const int gp = g - t.hbar;
      if (gp >= 0)
        rest += t.c * table.get_point(gp, with_extra(Mp, b1, b2)) / autMp;

      // product of two first derivatives: ordered splits of Mp
      std::vector<std::pair<int, int>> distinct(Mp.begin(), Mp.end());
      std::vector<int> pick(distinct.size(), 0);
      while (true) {
        Multiset M1, M2;
        for (size_t i = 0; i < distinct.size(); ++i) {
          if (pick[i] > 0) M1[distinct[i].first] = pick[i];
          if (distinct[i].second - pick[i] > 0)
            M2[distinct[i].first] = distinct[i].second - pick[i];
        }
        Rational w = t.c / (aut_of(M1) * aut_of(M2));
        for (int g1 = 0; g1 <= g - t.hbar + 1; ++g1) {
          int g2 = g - t.hbar + 1 - g1;
          // evaluate the second factor first: it vanishes in the edge cases
          // that would otherwise reference the unknown bracket itself
          Rational f2 = table.get_point(g2, with_extra(M2, b2));
          if (f2 == 0) continue;
          rest += w * table.get_point(g1, with_extra(M1, b1)) * f2;
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
    } else {
      throw std::logic_error("unexpected operator order");
    }
  }
  if (lead == 0) throw std::logic_error("degenerate constraint equation");
  return -rest / lead;
}

}  // namespace

CorrelatorTable solve_virasoro(int g_max, int n_max) {
  CorrelatorTable table(&FrobeniusAlgebra::point());
  table.set_point(0, {0, 0, 0}, 1);

  // largest insertion ever needed fixes the operator window
  int m_top = 1;
  for (int g = 0; g <= g_max; ++g)
    m_top = std::max(m_top, 3 * g - 3 + n_max + (g_max - g));
  const int depth = 2 * m_top - 1;

  std::map<int, DiffOperator> ops;
  auto op_for = [&](int n) -> const DiffOperator& {
    auto it = ops.find(n);
    if (it == ops.end())
      it = ops.emplace(n, virasoro_constraint_operator(n, depth)).first;
    return it->second;
  };

  for (int g = 0; g <= g_max; ++g) {
    const int cap = n_max + (g_max - g);
    for (int n = 1; n <= cap; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      const int sum = 3 * g - 3 + n;
      if (sum < 0) continue;
      std::vector<int> cur;
      enumerate_multisets(sum, n, sum, cur, [&](const std::vector<int>& S) {
        const int m = S[0];  // descending
        if (m == 0) return;  // only <tau_0^3>_0, already seeded
        table.set_point(g, S, solve_one(op_for(m - 1), table, g, S));
      });
    }
  }
  return table;
}

GenusExpandedPotential assemble_potential(const CorrelatorTable& table,
                                          UniversePtr t_uni, Truncation tr,
                                          int g_max) {
  const FrobeniusAlgebra& alg = table.algebra();
  if (alg.dim() != 1)
    throw std::invalid_argument("point target only");
  const int depth = t_uni->size() - 1;
  GenusExpandedPotential D;
  for (int g = 0; g <= g_max; ++g) {
    TruncatedSeries F(t_uni, tr);
    for (int n = 1; n <= tr.degree; ++n) {
      const int sum = 3 * g - 3 + n;
      if (sum < 0 || 2 * g - 2 + n <= 0) continue;
      std::vector<int> cur;
      enumerate_multisets(sum, n, std::min(sum, depth), cur,
                          [&](const std::vector<int>& S) {
                            Insertions ins = make_insertions(S);
                            Rational c =
                                table.get(g, 0, ins) / aut_order(ins);
                            if (c == 0) return;
                            ExpVec e(t_uni->size(), 0);
                            for (int k : S) e[k] += 1;
                            F.add_term(e, c);
                          });
    }
    D.F.push_back(std::move(F));
  }
  return D;
}

ConstraintReport verify_constraints(const CorrelatorTable& table, int g_max,
                                    int n_min, int n_max, int depth,
                                    int degree) {
  // second derivatives at monomial degree D read F at degree D + 2, so the
  // working bound overshoots the asserted bound by two
  UniversePtr uni = t_universe(table.algebra(), depth);
  Truncation tr{degree + 2, depth, g_max};
  GenusExpandedPotential D = assemble_potential(table, uni, tr, g_max);
  ConstraintReport rep;
  for (int n = n_min; n <= n_max; ++n) {
    DiffOperator op = virasoro_constraint_operator(n, depth);
    std::map<int, TruncatedSeries> res = apply(op, D);
    const int level_bound = depth - std::max(n, 0);
    for (const auto& [grade, s] : res) {
      for (const auto& [exp, c] : s.terms()) {
        if (total_degree(exp) > degree) continue;
        bool interior = true;
        for (size_t v = 0; v < exp.size(); ++v) {
          if (exp[v] > 0 && static_cast<int>(v) > level_bound)
            interior = false;
        }
        if (!interior) continue;
        rep.ok = false;
        std::ostringstream os;
        os << "constraint n=" << n << " residual at hbar^" << grade
           << ", coefficient " << rational_to_string(c) << " on monomial";
        for (size_t v = 0; v < exp.size(); ++v)
          for (int i = 0; i < exp[v]; ++i) os << " " << uni->name(v);
        rep.detail = os.str();
        return rep;
      }
    }
  }
  rep.detail = "all residuals vanish on the window interior";
  return rep;
}

}  // namespace gwq
