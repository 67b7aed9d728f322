#include "gwq/quantization.hpp"

#include <sstream>
#include <stdexcept>

namespace gwq {

void InfSymplectic::set_image(BasisKey b, LinComb image) {
  if (b.k < kmin_ || b.k > kmax_)
    throw std::invalid_argument("basis key outside domain window");
  if (b.mu < 0 || b.mu >= alg_->dim())
    throw std::invalid_argument("bad cohomology index");
  for (auto it = image.begin(); it != image.end();) {
    if (it->second == 0)
      it = image.erase(it);
    else
      ++it;
  }
  act_[b] = std::move(image);
}

const LinComb& InfSymplectic::image(BasisKey b) const {
  auto it = act_.find(b);
  if (it == act_.end()) {
    std::ostringstream os;
    os << "operator undefined on basis element (z^" << b.k << ", mu=" << b.mu
       << "); enlarge the window";
    throw std::out_of_range(os.str());
  }
  return it->second;
}

LinComb InfSymplectic::apply(const LinComb& v) const {
  LinComb out;
  for (const auto& [b, c] : v) {
    for (const auto& [b2, c2] : image(b)) {
      Rational& slot = out[b2];
      slot += c * c2;
      if (slot == 0) out.erase(b2);
    }
  }
  return out;
}

HElement InfSymplectic::apply(const HElement& f) const {
  HElement out(alg_, f.universe(), f.truncation());
  for (const auto& [k, comps] : f.coefficients()) {
    for (int mu = 0; mu < alg_->dim(); ++mu) {
      if (comps[mu].is_zero()) continue;
      for (const auto& [b2, c2] : image({k, mu})) {
        out.add(b2.k, b2.mu, comps[mu] * c2);
      }
    }
  }
  return out;
}

InfSymplectic operator*(const InfSymplectic& a, const Rational& c) {
  InfSymplectic out(a.alg_, a.kmin_, a.kmax_);
  for (const auto& [b, img] : a.act_) {
    LinComb scaled;
    for (const auto& [b2, c2] : img) scaled[b2] = c2 * c;
    out.set_image(b, std::move(scaled));
  }
  return out;
}

InfSymplectic operator-(const InfSymplectic& a, const InfSymplectic& b) {
  if (a.alg_ != b.alg_) throw std::invalid_argument("algebra mismatch");
  InfSymplectic out(a.alg_, std::max(a.kmin_, b.kmin_),
                    std::min(a.kmax_, b.kmax_));
  for (const auto& [key, img] : a.act_) {
    if (!b.defined_on(key)) continue;
    LinComb diff = img;
    for (const auto& [b2, c2] : b.image(key)) {
      Rational& slot = diff[b2];
      slot -= c2;
      if (slot == 0) diff.erase(b2);
    }
    if (key.k >= out.kmin_ && key.k <= out.kmax_)
      out.set_image(key, std::move(diff));
  }
  return out;
}

Rational omega_basis(const FrobeniusAlgebra& alg, BasisKey a, BasisKey b) {
  if (a.k + b.k != -1) return 0;
  Rational g = alg.pairing()[a.mu][b.mu];
  return (a.k % 2 == 0) ? g : -g;
}

Rational omega_lincomb(const FrobeniusAlgebra& alg, const LinComb& a,
                       const LinComb& b) {
  Rational out = 0;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out += ca * cb * omega_basis(alg, ka, kb);
  return out;
}

bool is_infinitesimally_symplectic(const InfSymplectic& A) {
  const FrobeniusAlgebra& alg = A.algebra();
  for (const auto& [b1, img1] : A.action()) {
    for (const auto& [b2, img2] : A.action()) {
      Rational s = omega_lincomb(alg, img1, {{b2, 1}}) +
                   omega_lincomb(alg, {{b1, 1}}, img2);
      if (s != 0) return false;
    }
  }
  return true;
}

InfSymplectic compose_partial(const InfSymplectic& a, const InfSymplectic& b) {
  if (&a.algebra() != &b.algebra())
    throw std::invalid_argument("algebra mismatch");
  InfSymplectic out(&a.algebra(), b.kmin(), b.kmax());
  for (const auto& [key, img] : b.action()) {
    bool ok = true;
    for (const auto& [b2, c2] : img) {
      if (!a.defined_on(b2)) {
        ok = false;
        break;
      }
    }
    if (ok) out.set_image(key, a.apply(img));
  }
  return out;
}

InfSymplectic commutator(const InfSymplectic& a, const InfSymplectic& b) {
  return compose_partial(a, b) - compose_partial(b, a);
}

void QuadraticForm::add(DarbouxKey a, DarbouxKey b, const Rational& c) {
  if (b < a) std::swap(a, b);
  Rational& slot = terms_[{a, b}];
  slot += c;
  if (slot == 0) terms_.erase({a, b});
}

Rational QuadraticForm::coefficient(DarbouxKey a, DarbouxKey b) const {
  if (b < a) std::swap(a, b);
  auto it = terms_.find({a, b});
  return it == terms_.end() ? Rational(0) : it->second;
}

static std::string darboux_str(const DarbouxKey& k) {
  std::string s = (k.kind == 0 ? "q" : "p") + std::to_string(k.k);
  if (k.mu != 0) s += "_" + std::to_string(k.mu);
  return s;
}

std::string QuadraticForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    os << (first ? "" : " + ") << "(" << rational_to_string(c) << ")*"
       << darboux_str(key.first);
    if (key.first == key.second)
      os << "^2";
    else
      os << "*" << darboux_str(key.second);
    first = false;
  }
  return os.str();
}

QuadraticForm quadratic_hamiltonian(const InfSymplectic& A, int q_max,
                                    int p_depth) {
  const FrobeniusAlgebra& alg = A.algebra();
  const int dim = alg.dim();
  const Matrix& ginv = alg.pairing_inverse();

  // Darboux basis vectors as z-basis combinations.
  std::vector<std::pair<DarbouxKey, LinComb>> basis;
  for (int k = 0; k <= q_max; ++k)
    for (int mu = 0; mu < dim; ++mu)
      basis.push_back({{0, k, mu}, {{{k, mu}, 1}}});
  for (int l = 0; l < p_depth; ++l) {
    for (int nu = 0; nu < dim; ++nu) {
      LinComb v;
      Rational sign = (l % 2 == 0) ? -1 : 1;  // (-1)^{l+1}
      for (int lam = 0; lam < dim; ++lam) {
        if (ginv[nu][lam] != 0) v[{-1 - l, lam}] = sign * ginv[nu][lam];
      }
      basis.push_back({{1, l, nu}, std::move(v)});
    }
  }

  std::vector<LinComb> images(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) images[i] = A.apply(basis[i].second);

  QuadraticForm h;
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i; j < basis.size(); ++j) {
      Rational c = (omega_lincomb(alg, images[i], basis[j].second) +
                    omega_lincomb(alg, images[j], basis[i].second)) /
                   2;
      if (i == j) c /= 2;
      if (c != 0) h.add(basis[i].first, basis[j].first, c);
    }
  }
  return h;
}

void DiffOperator::add_term(DiffOpTerm t) {
  if (t.c == 0) return;
  for (auto it = t.mono.begin(); it != t.mono.end();) {
    if (it->first < 0 || it->first >= uni_->size())
      throw std::out_of_range("monomial variable outside universe");
    it = (it->second == 0) ? t.mono.erase(it) : std::next(it);
  }
  for (auto it = t.deriv.begin(); it != t.deriv.end();) {
    if (it->first < 0 || it->first >= uni_->size())
      throw std::out_of_range("derivative variable outside universe");
    it = (it->second == 0) ? t.deriv.erase(it) : std::next(it);
  }
  terms_.push_back(std::move(t));
}

static auto term_key(const DiffOpTerm& t) {
  return std::tie(t.hbar, t.mono, t.deriv);
}

void DiffOperator::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const DiffOpTerm& a, const DiffOpTerm& b) {
              return term_key(a) < term_key(b);
            });
  std::vector<DiffOpTerm> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && term_key(merged.back()) == term_key(t)) {
      merged.back().c += t.c;
      if (merged.back().c == 0) merged.pop_back();
    } else if (t.c != 0) {
      merged.push_back(std::move(t));
    }
  }
  terms_ = std::move(merged);
}

DiffOperator operator+(const DiffOperator& a, const DiffOperator& b) {
  if (!same_universe(a.uni_, b.uni_))
    throw std::invalid_argument("operator universe mismatch");
  DiffOperator out(a.uni_ ? a.uni_ : b.uni_);
  out.terms_ = a.terms_;
  out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
  out.normalize();
  return out;
}

DiffOperator operator*(const DiffOperator& a, const Rational& c) {
  DiffOperator out(a.uni_);
  if (c == 0) return out;
  out.terms_ = a.terms_;
  for (auto& t : out.terms_) t.c *= c;
  return out;
}

DiffOperator operator-(const DiffOperator& a, const DiffOperator& b) {
  return a + b * Rational(-1);
}

bool operator==(const DiffOperator& a, const DiffOperator& b) {
  DiffOperator x = a, y = b;
  x.normalize();
  y.normalize();
  if (x.terms_.size() != y.terms_.size()) return false;
  for (size_t i = 0; i < x.terms_.size(); ++i) {
    if (term_key(x.terms_[i]) != term_key(y.terms_[i]) ||
        x.terms_[i].c != y.terms_[i].c)
      return false;
  }
  return true;
}

std::string DiffOperator::str() const {
  DiffOperator n = *this;
  n.normalize();
  if (n.terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : n.terms_) {
    os << (first ? "" : " + ") << "(" << rational_to_string(t.c) << ")";
    if (t.hbar != 0) os << "*hbar^" << t.hbar;
    for (const auto& [v, e] : t.mono) {
      os << "*" << uni_->name(v);
      if (e != 1) os << "^" << e;
    }
    for (const auto& [v, e] : t.deriv) {
      os << "*d[" << uni_->name(v) << "]";
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

static std::string coord_name(const FrobeniusAlgebra& alg,
                              const std::string& prefix, int k, int mu) {
  std::string s = prefix + std::to_string(k);
  if (alg.dim() > 1) s += "_" + std::to_string(mu);
  return s;
}

static UniversePtr coord_universe(const FrobeniusAlgebra& alg,
                                  const std::string& prefix, int depth) {
  std::vector<std::string> names;
  for (int k = 0; k <= depth; ++k)
    for (int mu = 0; mu < alg.dim(); ++mu)
      names.push_back(coord_name(alg, prefix, k, mu));
  return VarUniverse::make(names);
}

UniversePtr q_universe(const FrobeniusAlgebra& alg, int depth) {
  return coord_universe(alg, "q", depth);
}

UniversePtr t_universe(const FrobeniusAlgebra& alg, int depth) {
  return coord_universe(alg, "t", depth);
}

int coord_var(const VarUniverse& uni, const FrobeniusAlgebra& alg,
              const std::string& prefix, int k, int mu) {
  return uni.index_or_throw(coord_name(alg, prefix, k, mu));
}

DiffOperator quantize(const QuadraticForm& h, const FrobeniusAlgebra& alg,
                      UniversePtr q_uni) {
  DiffOperator op(q_uni);
  for (const auto& [key, c] : h.terms()) {
    const DarbouxKey& a = key.first;
    const DarbouxKey& b = key.second;
    int va = coord_var(*q_uni, alg, "q", a.k, a.mu);
    int vb = coord_var(*q_uni, alg, "q", b.k, b.mu);
    DiffOpTerm t;
    t.c = c;
    if (a.kind == 0 && b.kind == 0) {
      t.hbar = -1;
      t.mono[va] += 1;
      t.mono[vb] += 1;
    } else if (a.kind == 1 && b.kind == 1) {
      t.hbar = 1;
      t.deriv[va] += 1;
      t.deriv[vb] += 1;
    } else {
      // mixed: p-slot becomes the derivative, q-slot multiplies
      const DarbouxKey& p = (a.kind == 1) ? a : b;
      const DarbouxKey& q = (a.kind == 1) ? b : a;
      t.deriv[coord_var(*q_uni, alg, "q", p.k, p.mu)] += 1;
      t.mono[coord_var(*q_uni, alg, "q", q.k, q.mu)] += 1;
    }
    op.add_term(std::move(t));
  }
  op.normalize();
  return op;
}

DiffOperator dilaton_shift_operator(const DiffOperator& op,
                                    const FrobeniusAlgebra& alg,
                                    UniversePtr t_uni) {
  const VarUniverse& qu = *op.universe();
  // q-var index -> t-var index, and whether it is the shifted direction
  std::vector<int> remap(qu.size());
  int shifted = -1;
  for (int v = 0; v < qu.size(); ++v) {
    std::string name = qu.name(v);
    if (name.empty() || name[0] != 'q')
      throw std::invalid_argument("expected q-variable universe");
    name[0] = 't';
    remap[v] = t_uni->index_or_throw(name);
    if (name == coord_name(alg, "t", 1, 0)) shifted = v;
  }
  DiffOperator out(t_uni);
  for (const auto& t : op.terms()) {
    int e1 = 0;
    DiffOpTerm base;
    base.hbar = t.hbar;
    for (const auto& [v, e] : t.mono) {
      if (v == shifted)
        e1 = e;
      else
        base.mono[remap[v]] += e;
    }
    for (const auto& [v, e] : t.deriv) base.deriv[remap[v]] += e;
    // expand (t - 1)^e1 binomially in the shifted direction
    Rational binom = 1;
    for (int j = 0; j <= e1; ++j) {  // j = power of t kept
      DiffOpTerm term = base;
      // C(e1, j) * (-1)^{e1 - j}
      Rational coef = binom;
      if ((e1 - j) % 2 != 0) coef = -coef;
      term.c = t.c * coef;
      if (j > 0) term.mono[remap[shifted]] += j;
      out.add_term(std::move(term));
      binom = binom * (e1 - j) / (j + 1);
    }
  }
  out.normalize();
  return out;
}

std::map<int, TruncatedSeries> apply(const DiffOperator& op,
                                     const GenusExpandedPotential& D) {
  const int G = D.gmax();
  if (G < 0) throw std::invalid_argument("empty potential");
  const UniversePtr& uni = D.F[0].universe();
  const Truncation& tr = D.F[0].truncation();
  for (const auto& f : D.F) {
    if (!same_universe(f.universe(), uni))
      throw std::invalid_argument("potential universe mismatch");
  }
  if (op.universe() && !same_universe(op.universe(), uni))
    throw std::invalid_argument("operator/potential universe mismatch");

  // first-derivative cache: dF[g][v]
  std::vector<std::map<int, TruncatedSeries>> dF(G + 1);
  auto d1 = [&](int g, int v) -> const TruncatedSeries& {
    auto it = dF[g].find(v);
    if (it == dF[g].end()) it = dF[g].emplace(v, derive(D.F[g], v)).first;
    return it->second;
  };

  std::map<int, TruncatedSeries> out;
  for (int h = -1; h <= G - 1; ++h)
    out.emplace(h, TruncatedSeries(uni, tr));

  auto accumulate = [&](int grade, const TruncatedSeries& s,
                        const Rational& c) {
    auto it = out.find(grade);
    if (it != out.end()) it->second += s * c;
  };

  for (const auto& t : op.terms()) {
    int order = 0;
    for (const auto& [v, e] : t.deriv) order += e;
    TruncatedSeries monomial = TruncatedSeries::constant(uni, tr, 1);
    for (const auto& [v, e] : t.mono)
      for (int i = 0; i < e; ++i)
        monomial = monomial * TruncatedSeries::variable(uni, tr, v);

    if (order == 0) {
      // pure multiplication: contributes at grade hbar
      accumulate(t.hbar, monomial, t.c);
    } else if (order == 1) {
      int v = t.deriv.begin()->first;
      for (int g = 0; g <= G; ++g)
        accumulate(t.hbar + g - 1, monomial * d1(g, v), t.c);
    } else if (order == 2) {
      int v1, v2;
      if (t.deriv.size() == 1) {
        v1 = v2 = t.deriv.begin()->first;
      } else {
        auto it = t.deriv.begin();
        v1 = it->first;
        v2 = std::next(it)->first;
      }
      for (int g = 0; g <= G; ++g)
        accumulate(t.hbar + g - 1, monomial * derive(d1(g, v1), v2), t.c);
      for (int g1 = 0; g1 <= G; ++g1)
        for (int g2 = 0; g2 <= G; ++g2)
          accumulate(t.hbar + g1 + g2 - 2, monomial * (d1(g1, v1) * d1(g2, v2)),
                     t.c);
    } else {
      throw std::invalid_argument("operator order > 2 not supported");
    }
  }
  return out;
}

DiffOperator compose(const DiffOperator& a, const DiffOperator& b) {
  if (!same_universe(a.universe(), b.universe()))
    throw std::invalid_argument("operator universe mismatch");
  DiffOperator out(a.universe());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      // move d^{B_a} past t^{A_b}:
      // d^B t^A = sum_C prod_v C(B_v,C_v) (A_v)_(C_v) t^{A-C} d^{B-C}
      std::vector<std::pair<int, std::pair<int, int>>> touched;  // v -> (B,A)
      for (const auto& [v, e] : ta.deriv) {
        auto it = tb.mono.find(v);
        if (it != tb.mono.end()) touched.push_back({v, {e, it->second}});
      }
      // enumerate C over touched variables
      std::vector<int> cvec(touched.size(), 0);
      while (true) {
        Rational w = ta.c * tb.c;
        for (size_t i = 0; i < touched.size(); ++i) {
          int B = touched[i].second.first, A = touched[i].second.second,
              C = cvec[i];
          Rational f = 1;
          for (int j = 0; j < C; ++j)
            f = f * (B - j) / (j + 1) * (A - j);  // C(B,C)*falling(A,C)
          w *= f;
        }
        if (w != 0) {
          DiffOpTerm t;
          t.c = w;
          t.hbar = ta.hbar + tb.hbar;
          t.mono = ta.mono;
          for (const auto& [v, e] : tb.mono) t.mono[v] += e;
          t.deriv = tb.deriv;
          for (const auto& [v, e] : ta.deriv) t.deriv[v] += e;
          for (size_t i = 0; i < touched.size(); ++i) {
            int v = touched[i].first, C = cvec[i];
            t.mono[v] -= C;
            t.deriv[v] -= C;
          }
          out.add_term(std::move(t));
        }
        size_t pos = 0;
        for (; pos < cvec.size(); ++pos) {
          int bound = std::min(touched[pos].second.first,
                               touched[pos].second.second);
          if (cvec[pos] < bound) {
            ++cvec[pos];
            break;
          }
          cvec[pos] = 0;
        }
        if (pos == cvec.size()) break;
      }
    }
  }
  out.normalize();
  return out;
}

DiffOperator commutator(const DiffOperator& a, const DiffOperator& b) {
  return compose(a, b) - compose(b, a);
}

}  // namespace gwq
