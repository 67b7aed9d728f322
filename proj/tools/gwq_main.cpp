#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "gwq/cone.hpp"
#include "gwq/localization.hpp"
#include "gwq/oracles.hpp"
#include "gwq/selftest.hpp"
#include "gwq/virasoro.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIdentityFailure = 3;

// default truncation profile, overridable via GWQ_TRUNCATION="deg:depth:genus"
gwq::Truncation default_truncation() {
  gwq::Truncation tr{6, 6, 2};
  const char* env = std::getenv("GWQ_TRUNCATION");
  if (env) {
    int d = 0, k = 0, g = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(env);
    if ((is >> d >> c1 >> k >> c2 >> g) && c1 == ':' && c2 == ':') {
      tr = {d, k, g};
    } else {
      throw CLI::ValidationError("GWQ_TRUNCATION",
                                 "expected 'degree:depth:genus'");
    }
  }
  return tr;
}

json read_json_input(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  if (!path.empty() && (path[0] == '{' || path[0] == '['))
    return json::parse(path);  // inline literal
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("input", "cannot open " + path);
  return json::parse(in);
}

// '{}' means the zero element in the default ambient coordinates.
gwq::HElement element_input(const json& j, const gwq::FrobeniusAlgebra& alg,
                            const gwq::Truncation& tr) {
  if (j.is_object() && j.empty())
    return gwq::HElement(&alg, gwq::t_universe(alg, tr.depth), tr);
  return gwq::helement_from_json(j, alg);
}

json helement_breakdown(const gwq::HElement& h) { return gwq::helement_to_json(h); }

json report_json(bool ok, const std::string& detail) {
  json out;
  out["ok"] = ok;
  out["detail"] = detail;
  return out;
}

json diffop_json(const gwq::DiffOperator& op) {
  json terms = json::array();
  for (const auto& t : op.terms()) {
    json jt;
    jt["coeff"] = gwq::rational_to_string(t.c);
    jt["hbar"] = t.hbar;
    json mono = json::object(), deriv = json::object();
    for (const auto& [v, e] : t.mono) mono[op.universe()->name(v)] = e;
    for (const auto& [v, e] : t.deriv) deriv[op.universe()->name(v)] = e;
    jt["mono"] = mono;
    jt["deriv"] = deriv;
    terms.push_back(jt);
  }
  json out;
  out["vars"] = json::array();
  for (const auto& n : op.universe()->names()) out["vars"].push_back(n);
  out["terms"] = terms;
  return out;
}

std::vector<int> parse_levels(const std::vector<int>& ks) { return ks; }

gwq::CorrelatorTable genus0_table(int n_max) {
  return gwq::solve_virasoro(0, n_max);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in the quantization formalism for "
               "Gromov-Witten theory of a point"};
  app.require_subcommand(1);

  // ---- hspace pair ----
  auto* hspace = app.add_subcommand("hspace", "symplectic loop space");
  auto* pair = hspace->add_subcommand("pair", "residue pairing Omega(f, g)");
  std::string pair_lhs, pair_rhs;
  pair->add_option("--lhs", pair_lhs, "left element (JSON file or -)")
      ->required();
  pair->add_option("--rhs", pair_rhs, "right element (JSON file or -)")
      ->required();

  // ---- quantize ----
  auto* quant = app.add_subcommand(
      "quantize", "hamiltonian and quantization of a virasoro generator");
  int quant_n = 0, quant_depth = -1;
  quant->add_option("-n,--index", quant_n, "generator index (>= -1)")
      ->required();
  quant->add_option("--depth", quant_depth, "coordinate depth");

  // ---- wk ----
  auto* wk = app.add_subcommand("wk", "descendent integrals of the point");
  auto* corr = wk->add_subcommand("correlator", "single bracket value");
  int corr_g = 0;
  std::vector<int> corr_ks;
  bool corr_oracle = false;
  corr->add_option("-g,--genus", corr_g)->required();
  corr->add_option("-k,--levels", corr_ks, "insertion levels")->required();
  corr->add_flag("--oracle", corr_oracle,
                 "use the KdV-type recursion instead of the constraint solver");
  auto* pot = wk->add_subcommand("potential", "genus-g potential F^g");
  int pot_g = 0, pot_depth = -1, pot_degree = -1;
  pot->add_option("-g,--genus", pot_g)->required();
  pot->add_option("--depth", pot_depth);
  pot->add_option("--degree", pot_degree);

  // ---- virasoro verify ----
  auto* vira = app.add_subcommand("virasoro", "constraint operators");
  auto* verify = vira->add_subcommand(
      "verify", "apply the constraints to the tau function");
  int v_gmax = -1, v_nmin = -1, v_nmax = 3, v_depth = -1, v_degree = -1;
  verify->add_option("--gmax", v_gmax, "highest genus");
  verify->add_option("--nmin", v_nmin);
  verify->add_option("--nmax", v_nmax);
  verify->add_option("--depth", v_depth);
  verify->add_option("--degree", v_degree);

  // ---- cone ----
  auto* cone = app.add_subcommand("cone", "genus-zero lagrangian cone");
  auto* cpoint = cone->add_subcommand("point", "cone point J(t)");
  std::string cp_input;
  int cp_zdepth = 5, cp_nmax = -1;
  cpoint->add_option("--input,--t", cp_input, "t(z) (JSON literal, file, or -)")
      ->required();
  cpoint->add_option("--z-depth", cp_zdepth);
  cpoint->add_option("--n-max", cp_nmax);
  auto* ccheck = cone->add_subcommand("check", "membership test");
  std::string cc_input;
  int cc_deg = -1;
  ccheck->add_option("--input,--f", cc_input, "element (JSON literal, file, or -)")
      ->required();
  ccheck->add_option("--deg-assert", cc_deg, "assert through this degree");

  // ---- localize ----
  auto* loc = app.add_subcommand("localize", "graph-space localization");
  auto* push = loc->add_subcommand("push", "fixed-point pushforward");
  std::string lp_input;
  int lp_zdepth = 5, lp_nmax = -1;
  push->add_option("--input,--t", lp_input, "t(z) (JSON literal, file, or -)")
      ->required();
  push->add_option("--z-depth", lp_zdepth);
  push->add_option("--n-max", lp_nmax);
  auto* thm = loc->add_subcommand("verify-theorem1",
                                  "pushforward vs cone point");
  std::string th_input;
  int th_zdepth = 5, th_nmax = -1;
  thm->add_option("--input,--t", th_input, "t(z) (JSON literal, file, or -)")
      ->required();
  thm->add_option("--z-depth", th_zdepth);
  thm->add_option("--n-max", th_nmax);

  // ---- selftest ----
  auto* self = app.add_subcommand("selftest", "acceptance battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const gwq::FrobeniusAlgebra& alg = gwq::FrobeniusAlgebra::point();

  try {
    const gwq::Truncation tr = default_truncation();

    if (pair->parsed()) {
      gwq::HElement f = element_input(read_json_input(pair_lhs), alg, tr);
      gwq::HElement g = element_input(read_json_input(pair_rhs), alg, tr);
      json out;
      out["pairing"] = gwq::series_to_json(gwq::omega(f, g));
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (quant->parsed()) {
      if (quant_n < -1) throw CLI::ValidationError("-n", "index >= -1");
      int depth = quant_depth >= 0 ? quant_depth : tr.depth;
      gwq::InfSymplectic A =
          gwq::virasoro_generator(quant_n, -(depth + 1), depth);
      gwq::QuadraticForm h = gwq::quadratic_hamiltonian(A, depth, depth + 1);
      json out;
      out["n"] = quant_n;
      out["depth"] = depth;
      out["hamiltonian"] = h.str();
      out["operator"] = diffop_json(gwq::quantized_virasoro(quant_n, depth));
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (corr->parsed()) {
      std::vector<int> ks = parse_levels(corr_ks);
      json out;
      out["genus"] = corr_g;
      out["levels"] = ks;
      gwq::Rational v;
      if (corr_oracle) {
        v = gwq::dvv_correlator(corr_g, ks);
      } else {
        gwq::CorrelatorTable table =
            gwq::solve_virasoro(corr_g, static_cast<int>(ks.size()));
        v = table.get_point(corr_g, ks);
      }
      out["value"] = gwq::rational_to_string(v);
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (pot->parsed()) {
      int depth = pot_depth >= 0 ? pot_depth : tr.depth;
      int degree = pot_degree >= 0 ? pot_degree : tr.degree;
      gwq::CorrelatorTable table = gwq::solve_virasoro(pot_g, degree);
      gwq::GenusExpandedPotential D = gwq::assemble_potential(
          table, gwq::t_universe(alg, depth),
          gwq::Truncation{degree, depth, pot_g}, pot_g);
      json out;
      out["genus"] = pot_g;
      out["potential"] = gwq::series_to_json(D.F[pot_g]);
      std::cout << out.dump(2) << "\n";
      return 0;
    }

    if (verify->parsed()) {
      int gmax = v_gmax >= 0 ? v_gmax : tr.genus;
      int depth = v_depth >= 0 ? v_depth : tr.depth + std::max(v_nmax, 0);
      int degree = v_degree >= 0 ? v_degree : tr.degree;
      gwq::CorrelatorTable table = gwq::solve_virasoro(gmax, degree + 2);
      gwq::ConstraintReport rep =
          gwq::verify_constraints(table, gmax, v_nmin, v_nmax, depth, degree);
      std::cout << report_json(rep.ok, rep.detail).dump(2) << "\n";
      return rep.ok ? 0 : kExitIdentityFailure;
    }

    if (cpoint->parsed() || ccheck->parsed() || push->parsed() ||
        thm->parsed()) {
      const std::string& path = cpoint->parsed()  ? cp_input
                                : ccheck->parsed() ? cc_input
                                : push->parsed()   ? lp_input
                                                   : th_input;
      gwq::HElement t = element_input(read_json_input(path), alg, tr);
      const int degree = t.truncation().degree;
      gwq::CorrelatorTable table = genus0_table(degree + 2);
      if (cpoint->parsed()) {
        gwq::ConeConfig cfg{cp_zdepth, cp_nmax >= 0 ? cp_nmax : degree};
        std::cout << gwq::helement_to_json(gwq::cone_point(t, table, cfg))
                         .dump(2)
                  << "\n";
        return 0;
      }
      if (ccheck->parsed()) {
        int deg = cc_deg >= 0 ? cc_deg : degree - 1;
        gwq::ConeReport rep = gwq::check_on_cone(t, table, deg);
        std::cout << report_json(rep.ok, rep.detail).dump(2) << "\n";
        return rep.ok ? 0 : kExitIdentityFailure;
      }
      if (push->parsed()) {
        gwq::ConeConfig cfg{lp_zdepth, lp_nmax >= 0 ? lp_nmax : degree};
        gwq::LocalizationBreakdown b = gwq::ev_infty_push(t, table, cfg);
        json out;
        out["total"] = helement_breakdown(b.total);
        out["exceptional_zero"] = helement_breakdown(b.exceptional_zero);
        out["exceptional_one"] = helement_breakdown(b.exceptional_one);
        out["general"] = json::array();
        for (const auto& g : b.general)
          out["general"].push_back(helement_breakdown(g));
        std::cout << out.dump(2) << "\n";
        return 0;
      }
      gwq::ConeConfig cfg{th_zdepth, th_nmax >= 0 ? th_nmax : degree};
      gwq::TheoremReport rep = gwq::theorem1_verify(t, table, cfg);
      std::cout << report_json(rep.ok, rep.detail).dump(2) << "\n";
      return rep.ok ? 0 : kExitIdentityFailure;
    }

    if (self->parsed()) {
      bool all = true;
      for (const auto& r : gwq::run_selftest()) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": "
                  << r.detail << "\n";
        all = all && r.pass;
      }
      return all ? 0 : kExitIdentityFailure;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
