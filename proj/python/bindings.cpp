#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

#include "djcg/critical_points.hpp"
#include "djcg/csv_svg.hpp"
#include "djcg/degenerate_curves.hpp"
#include "djcg/errors.hpp"
#include "djcg/ode_oracle.hpp"
#include "djcg/one_spin_exact.hpp"
#include "djcg/soliton_rank0.hpp"
#include "djcg/soliton_rank1.hpp"

namespace py = pybind11;
using namespace djcg;

namespace {

using Columns = std::map<std::string, std::vector<double>>;

Columns to_columns(const Table& t) {
  Columns out;
  for (size_t c = 0; c < t.header.size(); ++c) {
    auto& v = out[t.header[c]];
    for (auto& r : t.rows) v.push_back(r[c]);
  }
  return out;
}

Table from_columns(const Columns& cols, const std::vector<std::string>& order) {
  Table t;
  t.header = order;
  size_t n = order.empty() ? 0 : cols.at(order[0]).size();
  t.rows.assign(n, std::vector<double>(order.size()));
  for (size_t c = 0; c < order.size(); ++c) {
    const auto& v = cols.at(order[c]);
    if (v.size() != n) throw Error(Code::BadColumns, "columns differ in length");
    for (size_t r = 0; r < n; ++r) t.rows[r][c] = v[r];
  }
  return t;
}

py::dict critical_point_dict(const CriticalPoint& cp) {
  py::dict d;
  d["signs"] = cp.signs;
  d["roots"] = cp.roots;
  d["classification"] = stability_name(cp.classification);
  d["n_pairs"] = cp.n_pairs;
  d["n_real"] = cp.n_real;
  d["hcrit"] = cp.hcrit;
  d["borderline"] = cp.borderline;
  return d;
}

py::tuple trajectory_result(const ModelParams& p, const Trajectory& tr) {
  Table t = trajectory_table(p, tr);
  return py::make_tuple(to_columns(t), t.header, tr.gaps);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Classical Dicke-Jaynes-Cummings-Gaudin model: critical points and soliton trajectories";

  static py::exception<Error> exc(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = exc;
      py::object inst = err(std::string(code_name(e.code())) + ": " + e.what());
      inst.attr("code") = code_name(e.code());
      PyErr_SetObject(err.ptr(), inst.ptr());
    }
  });

  py::class_<ModelParams>(m, "Model")
      .def(py::init([](std::vector<double> eps, double s, double omega) {
             ModelParams p{std::move(eps), s, omega};
             p.validate();
             return p;
           }),
           py::arg("epsilon"), py::arg("s") = 0.5, py::arg("omega") = 0.0)
      .def_static("from_json", &params_from_json)
      .def_static("load", &load_params)
      .def_readonly("epsilon", &ModelParams::epsilons)
      .def_readonly("s", &ModelParams::s)
      .def_readonly("omega", &ModelParams::omega)
      .def_property_readonly("n", &ModelParams::n)
      .def("__repr__", [](const ModelParams& p) {
        return "Model(n=" + std::to_string(p.n()) + ", s=" + fmt_double(p.s) + ", omega=" + fmt_double(p.omega) + ")";
      });

  m.def("bethe_roots", &solve_bethe, py::arg("model"), py::arg("signs"));
  m.def("critical_point", [](const ModelParams& p, const std::vector<int>& s) {
    return critical_point_dict(make_critical_point(p, s));
  }, py::arg("model"), py::arg("signs"));
  m.def("critical_points", [](const ModelParams& p) {
    py::list out;
    for (auto& cp : enumerate_critical_points(p)) out.append(critical_point_dict(cp));
    return out;
  }, py::arg("model"));
  m.def("jacobian_eigenvalues", [](const ModelParams& p, const std::vector<int>& s) {
    return jacobian_eigenvalues(p, critical_state(p, s));
  }, py::arg("model"), py::arg("signs"));

  m.def("rank0_trajectory",
        [](const ModelParams& p, const std::vector<int>& signs, const CVec& x0, double t0, double t1, double dt,
           const std::vector<int>& frozen, double phase) {
          Rank0SolitonSpec sp = make_rank0_spec(make_critical_point(p, signs), frozen, x0, phase);
          return trajectory_result(p, sample_trajectory(p, sp, t0, t1, dt));
        },
        py::arg("model"), py::arg("signs"), py::arg("x0"), py::arg("t0"), py::arg("t1"), py::arg("dt"),
        py::arg("frozen") = std::vector<int>{}, py::arg("phase") = 0.0);

  m.def("rank1_curves", [](const ModelParams& p, double x) {
    py::list out;
    for (auto& c : rank1_at(p, x)) {
      py::dict d;
      d["x"] = c.x;
      d["doubles"] = c.doubles;
      d["alphas"] = c.alphas;
      d["hvals"] = c.hvals;
      d["pcoeffs"] = c.pcoeffs;
      out.append(d);
    }
    return out;
  }, py::arg("model"), py::arg("x"));

  m.def("rank1_trajectory",
        [](const ModelParams& p, double x, int curve, const CVec& x0, double t0, double t1, double dt,
           const std::vector<int>& frozen, double phase) {
          auto curves = rank1_at(p, x);
          if (curve < 0 || curve >= static_cast<int>(curves.size()))
            throw Error(Code::InvalidInput, "curve index out of range");
          Rank1SolitonSpec sp = make_rank1_spec(p, curves[curve], frozen, x0, phase);
          return trajectory_result(p, sample_trajectory_rank1(p, sp, t0, t1, dt));
        },
        py::arg("model"), py::arg("x"), py::arg("curve"), py::arg("x0"), py::arg("t0"), py::arg("t1"),
        py::arg("dt"), py::arg("frozen") = std::vector<int>{}, py::arg("phase") = 0.0);

  m.def("oracle",
        [](const ModelParams& p, const Columns& cols, const std::vector<std::string>& header, double anchor,
           double rel_tol) {
          Trajectory tr = trajectory_from_table(p, from_columns(cols, header));
          IntegratorConfig cfg;
          cfg.rel_tol = rel_tol;
          CompareReport r = compare(tr, p, cfg, anchor);
          py::dict d;
          d["max_dev"] = r.max_dev;
          d["max_rel_dev"] = r.max_rel_dev;
          d["worst_time"] = r.worst_time;
          d["anchor_time"] = r.anchor_time;
          d["steps"] = r.steps;
          return d;
        },
        py::arg("model"), py::arg("columns"), py::arg("header"), py::arg("anchor") = 0.0,
        py::arg("rel_tol") = 1e-10);

  m.def("real_slice",
        [](const ModelParams& p, double H1, double H2, const std::vector<double>& xs) {
          py::list out;
          for (auto& r : sample_real_slice(p, H1, H2, xs)) out.append(py::make_tuple(r.x, r.yplus, r.yminus, r.admissible));
          return out;
        },
        py::arg("model"), py::arg("H1"), py::arg("H2"), py::arg("xs"));

  m.def("fmt_double", &fmt_double);
}
