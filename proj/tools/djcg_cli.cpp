// Command-line front end: one subcommand per computation, CSV/JSON/SVG output.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "djcg/critical_points.hpp"
#include "djcg/csv_svg.hpp"
#include "djcg/degenerate_curves.hpp"
#include "djcg/errors.hpp"
#include "djcg/one_spin_exact.hpp"
#include "djcg/ode_oracle.hpp"
#include "djcg/soliton_rank0.hpp"
#include "djcg/soliton_rank1.hpp"

using namespace djcg;
using nlohmann::json;

namespace {

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json cvec_json(const CVec& v) {
  json a = json::array();
  for (cplx z : v) a.push_back(cjson(z));
  return a;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, ',')) {
    size_t a = cur.find_first_not_of(" \t"), b = cur.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(cur.substr(a, b - a + 1));
  }
  return out;
}

// "0.5", "-2i", "0.3+0.1i", "1e-3-2e-2i"
cplx parse_complex(const std::string& s) {
  std::string t = s;
  if (t.empty()) throw Error(Code::InvalidInput, "empty complex value");
  if (t.back() != 'i' && t.back() != 'j') {
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (*end) throw Error(Code::InvalidInput, "bad complex value '" + s + "'");
    return v;
  }
  t.pop_back();
  size_t k = std::string::npos;
  for (size_t i = t.size(); i-- > 1;)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      k = i;
      break;
    }
  auto num = [&](const std::string& u) -> double {
    if (u.empty() || u == "+") return 1.0;
    if (u == "-") return -1.0;
    char* end = nullptr;
    double v = std::strtod(u.c_str(), &end);
    if (*end) throw Error(Code::InvalidInput, "bad complex value '" + s + "'");
    return v;
  };
  if (k == std::string::npos) return cplx(0.0, num(t));
  return cplx(num(t.substr(0, k)), num(t.substr(k)));
}

CVec parse_cvec(const std::string& s) {
  CVec v;
  for (auto& f : split_list(s)) v.push_back(parse_complex(f));
  return v;
}

// "pair2" (1-based pair index), "E3" (pair containing root 3, 1-based), "none"
std::vector<int> parse_freeze(const std::string& s, const std::vector<std::array<int, 2>>& pairs) {
  std::vector<int> out;
  for (auto& f : split_list(s)) {
    if (f == "none") continue;
    auto idx = [&](const std::string& digits) {
      char* end = nullptr;
      long k = std::strtol(digits.c_str(), &end, 10);
      if (digits.empty() || *end) throw Error(Code::InvalidInput, "bad freeze token '" + f + "'");
      return static_cast<int>(k);
    };
    if (f.rfind("pair", 0) == 0) {
      int k = idx(f.substr(4));
      if (k < 1 || k > static_cast<int>(pairs.size())) throw Error(Code::InvalidInput, "no conjugate pair " + f);
      out.push_back(k - 1);
    } else if (f[0] == 'E') {
      int r = idx(f.substr(1)) - 1;
      int hit = -1;
      for (size_t k = 0; k < pairs.size(); ++k)
        if (pairs[k][0] == r || pairs[k][1] == r) hit = static_cast<int>(k);
      if (hit < 0) throw Error(Code::InvalidInput, f + " is not a complex root (real roots are always frozen)");
      out.push_back(hit);
    } else {
      throw Error(Code::InvalidInput, "bad freeze token '" + f + "'");
    }
  }
  return out;
}

std::vector<std::array<int, 2>> rank0_pairs(const CriticalPoint& cp) {
  std::vector<std::array<int, 2>> pr;
  for (int k = 0; k < cp.n_pairs; ++k) pr.push_back({2 * k, 2 * k + 1});
  return pr;
}

double env_tol(double fallback) {
  if (const char* v = std::getenv("DJCG_TOL")) {
    char* end = nullptr;
    double t = std::strtod(v, &end);
    if (*end || !(t > 0)) throw Error(Code::InvalidInput, "DJCG_TOL must be a positive number");
    return t;
  }
  return fallback;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw Error(Code::InvalidInput, "cannot write " + out);
  f << text;
}

void emit_table(const std::string& out, const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  emit(out, os.str());
}

json critical_json(const CriticalPoint& cp) {
  return json{{"signs", cp.signs},
              {"roots", cvec_json(cp.roots)},
              {"n_real", cp.n_real},
              {"n_pairs", cp.n_pairs},
              {"classification", stability_name(cp.classification)},
              {"hcrit", cvec_json(cp.hcrit)},
              {"borderline", cp.borderline}};
}

json trajectory_summary(const Trajectory& tr) {
  double drift = 0, imag = 0;
  for (double d : tr.h_drift) drift = std::max(drift, d);
  for (double d : tr.max_imag) imag = std::max(imag, d);
  return json{{"samples", tr.times.size()}, {"gaps", tr.gaps}, {"max_h_drift", drift}, {"max_imag", imag}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical Dicke / Jaynes-Cummings-Gaudin model: critical points, solitons, real slices."};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output and errors");
  // subcommands hand unknown flags to the parent, so --json works in any position
  app.fallthrough();

  std::string model, out, signs, freeze = "none", x0, alphas;
  double t0 = -10, t1 = 10, dt = 0.01, phase = 0;

  auto* cpc = app.add_subcommand("critical-points", "enumerate equilibria and classify them");
  cpc->add_option("--model", model, "model JSON")->required();

  auto* bethe = app.add_subcommand("bethe", "classical Bethe roots for one sign pattern");
  bethe->add_option("--model", model)->required();
  bethe->add_option("--signs", signs, "e.g. +,-,+")->required();

  auto* nf = app.add_subcommand("normal-form", "quadratic normal form and linear frequencies");
  nf->add_option("--model", model)->required();
  nf->add_option("--signs", signs)->required();

  auto* sol = app.add_subcommand("soliton", "exact soliton trajectories");
  sol->require_subcommand(1);
  auto* r0 = sol->add_subcommand("rank0", "trajectory on a rank-zero critical fiber");
  auto* r1 = sol->add_subcommand("rank1", "trajectory on a rank-one critical fiber");
  double xfam = 0;
  int curve_index = -1;
  for (auto* s : {r0, r1}) {
    s->add_option("--model", model)->required();
    s->add_option("--freeze", freeze, "pairK or Ek, comma separated");
    s->add_option("--x0", x0, "X(0) for each unfrozen upper root")->required();
    s->add_option("--t0", t0);
    s->add_option("--t1", t1);
    s->add_option("--dt", dt);
    s->add_option("--phase", phase, "global U(1) angle at t = 0");
    s->add_option("--out", out, "CSV path (stdout if omitted)");
  }
  r0->add_option("--signs", signs)->required();
  r1->add_option("--x", xfam, "family parameter")->required();
  r1->add_option("--alphas", alphas, "sign pattern of the family, e.g. +,-");
  r1->add_option("--curve", curve_index, "index among the curves found at x (default: first with complex doubles)");

  auto* mm = app.add_subcommand("moment-map", "rank-one lines of the moment-map image");
  double xmin = NAN, xmax = NAN;
  int count = 400;
  mm->add_option("--model", model)->required();
  mm->add_option("--xmin", xmin);
  mm->add_option("--xmax", xmax);
  mm->add_option("--count", count);
  mm->add_option("--alphas", alphas);
  mm->add_option("--out", out);

  auto* rs = app.add_subcommand("realslice-n1", "one-spin real slice or circle pencil");
  double H1 = NAN, H2 = NAN;
  bool pencil = false;
  std::string thetas;
  int e1 = 1;
  rs->add_option("--model", model)->required();
  rs->add_option("--H1", H1);
  rs->add_option("--H2", H2);
  rs->add_option("--xmin", xmin);
  rs->add_option("--xmax", xmax);
  rs->add_option("--count", count);
  rs->add_flag("--circle-pencil", pencil, "emit pencil circles instead of the exact slice");
  rs->add_option("--theta", thetas, "comma-separated direction angles (pencil mode)");
  rs->add_option("--e1", e1, "spin sign of the critical point (pencil mode, with --alpha)");
  std::string alphalist;
  rs->add_option("--alpha", alphalist, "comma-separated pencil parameters");
  rs->add_option("--out", out);

  auto* orc = app.add_subcommand("oracle", "certify a trajectory CSV against direct integration");
  std::string traj;
  double tol = NAN, threshold = 1e-6, anchor = NAN;
  orc->add_option("--traj", traj)->required();
  orc->add_option("--model", model)->required();
  orc->add_option("--tol", tol, "integrator relative tolerance");
  orc->add_option("--threshold", threshold, "pass if sup deviation is below this");
  orc->add_option("--anchor", anchor, "seed time (default: first sample)");

  auto* plot = app.add_subcommand("plot", "render a CSV as SVG");
  std::string kind, in, title, xcol, ycols;
  plot->add_option("--kind", kind, "lambda-plane, timeseries, moment-map, real-slice")->required();
  plot->add_option("--in", in)->required();
  plot->add_option("--out", out);
  plot->add_option("--title", title);
  plot->add_option("--x", xcol, "x column (lambda-plane: variable prefix, lambda or Lambda)");
  plot->add_option("--y", ycols, "comma-separated y columns");
  plot->add_option("--model", model, "adds spin-level markers");
  plot->add_option("--signs", signs, "adds Bethe-root markers (with --model)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cpc) {
      ModelParams p = load_params(model);
      json a = json::array();
      for (auto& cp : enumerate_critical_points(p)) a.push_back(critical_json(cp));
      std::cout << a.dump(2) << "\n";
    } else if (*bethe) {
      ModelParams p = load_params(model);
      CriticalPoint cp = make_critical_point(p, parse_signs(signs));
      std::cout << critical_json(cp).dump(2) << "\n";
    } else if (*nf) {
      ModelParams p = load_params(model);
      CriticalPoint cp = make_critical_point(p, parse_signs(signs));
      NormalForm f = normal_form(p, cp);
      CVec jac = jacobian_eigenvalues(p, critical_state(p, cp.signs));
      json j = critical_json(cp);
      j["aprime"] = cvec_json(f.aprime);
      j["frequencies"] = cvec_json(f.freqs);
      j["jacobian_eigenvalues"] = cvec_json(jac);
      std::cout << j.dump(2) << "\n";
    } else if (*r0) {
      ModelParams p = load_params(model);
      CriticalPoint cp = make_critical_point(p, parse_signs(signs));
      Rank0SolitonSpec sp = make_rank0_spec(cp, parse_freeze(freeze, rank0_pairs(cp)), parse_cvec(x0), phase);
      Trajectory tr = sample_trajectory(p, sp, t0, t1, dt);
      emit_table(out, trajectory_table(p, tr));
      if (!out.empty()) std::cerr << trajectory_summary(tr).dump() << "\n";
    } else if (*r1) {
      ModelParams p = load_params(model);
      std::optional<std::vector<int>> al;
      if (!alphas.empty()) al = parse_alphas(alphas);
      auto curves = rank1_at(p, xfam, al);
      if (curves.empty()) throw Error(Code::NoSolution, "no rank-one curve at this x");
      int pick = curve_index;
      if (pick < 0) {
        for (size_t i = 0; i < curves.size() && pick < 0; ++i)
          if (!conjugate_pairs(curves[i]).empty()) pick = static_cast<int>(i);
        if (pick < 0) pick = 0;
      }
      if (pick >= static_cast<int>(curves.size())) throw Error(Code::InvalidInput, "curve index out of range");
      const DegenerateCurve& c = curves[pick];
      Rank1SolitonSpec sp = make_rank1_spec(p, c, parse_freeze(freeze, conjugate_pairs(c)), parse_cvec(x0), phase);
      Trajectory tr = sample_trajectory_rank1(p, sp, t0, t1, dt);
      emit_table(out, trajectory_table(p, tr));
      if (!out.empty()) std::cerr << trajectory_summary(tr).dump() << "\n";
    } else if (*mm) {
      ModelParams p = load_params(model);
      std::vector<double> xs;
      if (std::isnan(xmin) && std::isnan(xmax)) {
        xs = default_x_grid(p, count);
      } else {
        if (std::isnan(xmin) || std::isnan(xmax) || !(xmax > xmin) || count < 2)
          throw Error(Code::InvalidInput, "need xmin < xmax and count >= 2");
        for (int i = 0; i < count; ++i) xs.push_back(xmin + (xmax - xmin) * i / (count - 1));
      }
      std::optional<std::vector<int>> al;
      if (!alphas.empty()) al = parse_alphas(alphas);
      Table t;
      t.header.push_back("x");
      for (int k = 1; k <= p.n() + 1; ++k) t.header.push_back("H" + std::to_string(k));
      t.header.push_back("discriminant");
      for (auto& fp : rank1_family(p, xs, al)) {
        std::vector<double> r{fp.x};
        for (cplx h : fp.curve.hvals) r.push_back(h.real());
        r.push_back(fp.curve.delta());
        t.rows.push_back(std::move(r));
      }
      emit_table(out, t);
    } else if (*rs) {
      ModelParams p = load_params(model);
      if (p.n() != 1) throw Error(Code::InvalidInput, "realslice-n1 needs a one-spin model");
      double e = p.epsilons[0];
      if (std::isnan(xmin)) xmin = std::min(e, 0.0) - 2.0 * p.scale();
      if (std::isnan(xmax)) xmax = std::max(e, 0.0) + 2.0 * p.scale();
      if (count < 2) throw Error(Code::InvalidInput, "count must be at least 2");
      Table t;
      if (pencil) {
        std::vector<std::pair<double, Circle>> circles;
        if (!thetas.empty())
          for (auto& f : split_list(thetas)) {
            double th = std::stod(f);
            circles.emplace_back(th, pencil_circle_theta(p, th));
          }
        if (!alphalist.empty())
          for (auto& f : split_list(alphalist)) {
            double a = std::stod(f);
            circles.emplace_back(a, pencil_circle(p, e1, a));
          }
        if (circles.empty()) throw Error(Code::InvalidInput, "pencil mode needs --theta or --alpha");
        t.header = {"param", "x", "y"};
        for (auto& [par, c] : circles) {
          if (c.radius2 < 0) continue;
          double r = std::sqrt(c.radius2);
          for (int i = 0; i < count; ++i) {
            double a = 2.0 * M_PI * i / count;
            t.rows.push_back({par, c.center + r * std::cos(a), r * std::sin(a)});
          }
        }
      } else {
        if (std::isnan(H1) || std::isnan(H2)) throw Error(Code::InvalidInput, "need --H1 and --H2");
        std::vector<double> xs;
        for (int i = 0; i < count; ++i) xs.push_back(xmin + (xmax - xmin) * i / (count - 1));
        t.header = {"x", "yplus", "yminus", "admissible"};
        for (auto& r : sample_real_slice(p, H1, H2, xs))
          t.rows.push_back({r.x, r.yplus.value_or(NAN), r.yminus.value_or(NAN), r.admissible ? 1.0 : 0.0});
      }
      emit_table(out, t);
    } else if (*orc) {
      ModelParams p = load_params(model);
      Trajectory an = trajectory_from_table(p, read_csv_file(traj));
      if (an.times.empty()) throw Error(Code::InvalidInput, "trajectory file has no samples");
      IntegratorConfig cfg;
      cfg.rel_tol = std::isnan(tol) ? env_tol(cfg.rel_tol) : tol;
      cfg.abs_tol = 1e-2 * cfg.rel_tol;
      CompareReport rep = compare(an, p, cfg, anchor);
      json j{{"max_dev", rep.max_dev},   {"max_rel_dev", rep.max_rel_dev}, {"worst_time", rep.worst_time},
             {"anchor_time", rep.anchor_time}, {"steps", rep.steps},     {"h_dev", rep.h_dev},
             {"rel_tol", cfg.rel_tol},   {"threshold", threshold},         {"pass", rep.max_dev < threshold}};
      std::cout << j.dump(2) << "\n";
    } else if (*plot) {
      Table t = read_csv_file(in);
      PlotSpec spec;
      spec.kind = kind;
      spec.title = title;
      spec.xcol = xcol;
      spec.ycols = split_list(ycols);
      if (!model.empty()) {
        ModelParams p = load_params(model);
        if (kind == "lambda-plane") {
          for (double e : p.epsilons) spec.markers.push_back({e, 0.0, "eps"});
          if (!signs.empty())
            for (cplx E : solve_bethe(p, parse_signs(signs))) spec.markers.push_back({E.real(), E.imag(), "bethe"});
        }
      }
      emit(out, render_svg(spec, t));
    }
  } catch (const Error& e) {
    int rc = is_input_error(e.code()) ? 2 : 3;
    if (as_json)
      std::cerr << json{{"error", code_name(e.code())}, {"message", e.what()}, {"exit", rc}}.dump() << "\n";
    else
      std::cerr << "error [" << code_name(e.code()) << "]: " << e.what() << "\n";
    return rc;
  } catch (const json::exception& e) {
    if (as_json)
      std::cerr << json{{"error", "InvalidInput"}, {"message", e.what()}, {"exit", 2}}.dump() << "\n";
    else
      std::cerr << "error [InvalidInput]: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error [InvalidInput]: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
