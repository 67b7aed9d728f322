#include "gwq/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gwq {

VarUniverse::VarUniverse(std::vector<std::string> names)
    : names_(std::move(names)) {
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    if (!index_.emplace(names_[i], i).second)
      throw std::invalid_argument("duplicate variable name: " + names_[i]);
  }
}

UniversePtr VarUniverse::make(std::vector<std::string> names) {
  return std::shared_ptr<const VarUniverse>(new VarUniverse(std::move(names)));
}

UniversePtr VarUniverse::indexed(const std::string& prefix, int depth) {
  std::vector<std::string> names;
  names.reserve(depth + 1);
  for (int k = 0; k <= depth; ++k) names.push_back(prefix + std::to_string(k));
  return make(std::move(names));
}

int VarUniverse::index(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int VarUniverse::index_or_throw(const std::string& name) const {
  int i = index(name);
  if (i < 0) throw std::invalid_argument("unknown variable: " + name);
  return i;
}

TruncatedSeries TruncatedSeries::constant(UniversePtr uni, Truncation trunc,
                                          const Rational& c) {
  TruncatedSeries s(std::move(uni), trunc);
  s.add_term(ExpVec(s.uni_->size(), 0), c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(UniversePtr uni, Truncation trunc,
                                          int var) {
  TruncatedSeries s(std::move(uni), trunc);
  if (var < 0 || var >= s.uni_->size())
    throw std::invalid_argument("variable index out of range");
  ExpVec e(s.uni_->size(), 0);
  e[var] = 1;
  s.add_term(e, 1);
  return s;
}

TruncatedSeries TruncatedSeries::monomial(UniversePtr uni, Truncation trunc,
                                          const ExpVec& exp, const Rational& c) {
  TruncatedSeries s(std::move(uni), trunc);
  if (static_cast<int>(exp.size()) != s.uni_->size())
    throw std::invalid_argument("exponent vector size mismatch");
  s.add_term(exp, c);
  return s;
}

Rational TruncatedSeries::coefficient(const ExpVec& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational TruncatedSeries::constant_term() const {
  if (!uni_) return 0;
  return coefficient(ExpVec(uni_->size(), 0));
}

void TruncatedSeries::add_term(const ExpVec& exp, const Rational& c) {
  if (c == 0) return;
  for (int x : exp)
    if (x < 0) throw std::invalid_argument("negative exponent");
  if (total_degree(exp) > trunc_.degree) return;
  auto [it, fresh] = terms_.emplace(exp, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (!same_universe(uni_, o.uni_))
    throw std::invalid_argument("series universe mismatch");
  if (!(trunc_ == o.trunc_))
    throw std::invalid_argument("series truncation mismatch");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (!uni_) {
    *this = o;
    return *this;
  }
  if (o.uni_) check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (!uni_) {
    *this = o;
    *this *= Rational(-1);
    return *this;
  }
  if (o.uni_) check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_compatible(b);
  TruncatedSeries out(a.uni_, a.trunc_);
  const int n = a.uni_->size();
  ExpVec e(n);
  for (const auto& [ea, ca] : a.terms_) {
    int da = total_degree(ea);
    for (const auto& [eb, cb] : b.terms_) {
      if (da + total_degree(eb) > a.trunc_.degree) continue;
      for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (!same_universe(a.uni_, b.uni_)) return false;
  return a.terms_ == b.terms_;
}

TruncatedSeries TruncatedSeries::degree_limited(int bound) const {
  TruncatedSeries out(uni_, trunc_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) <= bound) out.terms_.emplace(e, c);
  return out;
}

int TruncatedSeries::max_degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.rbegin()->first);
}

std::string TruncatedSeries::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool unit = (a == 1) && total_degree(e) > 0;
    if (!unit) os << rational_to_string(a);
    bool any = false;
    for (int i = 0; i < static_cast<int>(e.size()); ++i) {
      if (e[i] == 0) continue;
      if (any || !unit) os << "*";
      os << uni_->name(i);
      if (e[i] > 1) os << "^" << e[i];
      any = true;
    }
  }
  return os.str();
}

TruncatedSeries derive(const TruncatedSeries& a, int var) {
  if (!a.universe() || var < 0 || var >= a.universe()->size())
    throw std::invalid_argument("derive: unknown variable");
  TruncatedSeries out(a.universe(), a.truncation());
  for (const auto& [e, c] : a.terms()) {
    if (e[var] == 0) continue;
    ExpVec d = e;
    d[var] -= 1;
    out.add_term(d, c * Rational(e[var]));
  }
  return out;
}

TruncatedSeries substitute(const TruncatedSeries& a,
                           const std::map<int, TruncatedSeries>& images,
                           UniversePtr target, Truncation trunc) {
  for (const auto& [v, img] : images) {
    if (v < 0 || v >= a.universe()->size())
      throw std::invalid_argument("substitute: unknown source variable");
    if (!same_universe(img.universe(), target))
      throw std::invalid_argument("substitute: image outside target universe");
  }
  TruncatedSeries out(target, trunc);
  for (const auto& [e, c] : a.terms()) {
    TruncatedSeries term = TruncatedSeries::constant(target, trunc, c);
    for (int i = 0; i < static_cast<int>(e.size()); ++i) {
      if (e[i] == 0) continue;
      TruncatedSeries base;
      auto it = images.find(i);
      if (it != images.end()) {
        base = it->second;
      } else {
        int j = target->index(a.universe()->name(i));
        if (j < 0)
          throw std::invalid_argument("substitute: variable " +
                                      a.universe()->name(i) +
                                      " missing from target universe");
        base = TruncatedSeries::variable(target, trunc, j);
      }
      for (int p = 0; p < e[i]; ++p) term = term * base;
    }
    out += term;
  }
  return out;
}

TruncatedSeries substitute_affine(
    const TruncatedSeries& a,
    const std::map<int, std::pair<int, Rational>>& images, UniversePtr target) {
  std::map<int, TruncatedSeries> imgs;
  for (const auto& [v, aff] : images) {
    TruncatedSeries s =
        TruncatedSeries::variable(target, a.truncation(), aff.first);
    if (aff.second != 0)
      s += TruncatedSeries::constant(target, a.truncation(), aff.second);
    imgs.emplace(v, std::move(s));
  }
  return substitute(a, imgs, target, a.truncation());
}

nlohmann::ordered_json series_to_json(const TruncatedSeries& s) {
  nlohmann::ordered_json j;
  j["vars"] = s.universe() ? s.universe()->names() : std::vector<std::string>{};
  j["trunc"] = {{"deg", s.truncation().degree},
                {"depth", s.truncation().depth},
                {"genus", s.truncation().genus}};
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [e, c] : s.terms()) {
    nlohmann::ordered_json exp = nlohmann::ordered_json::object();
    for (int i = 0; i < static_cast<int>(e.size()); ++i)
      if (e[i] != 0) exp[s.universe()->name(i)] = e[i];
    terms.push_back({{"exp", exp}, {"coeff", rational_to_string(c)}});
  }
  j["terms"] = std::move(terms);
  return j;
}

TruncatedSeries series_from_json(const nlohmann::json& j) {
  auto uni = VarUniverse::make(j.at("vars").get<std::vector<std::string>>());
  Truncation tr{j.at("trunc").at("deg").get<int>(),
                j.at("trunc").at("depth").get<int>(),
                j.at("trunc").at("genus").get<int>()};
  TruncatedSeries s(uni, tr);
  for (const auto& t : j.at("terms")) {
    ExpVec e(uni->size(), 0);
    for (const auto& [name, pow] : t.at("exp").items())
      e[uni->index_or_throw(name)] = pow.get<int>();
    s.add_term(e, rational_from_string(t.at("coeff").get<std::string>()));
  }
  return s;
}

}  // namespace gwq
