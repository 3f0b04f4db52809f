#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xqd/closed_forms.hpp"

namespace py = pybind11;
using namespace xqd;

namespace {

using CArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

CArray to_numpy(const Matrix4& m) {
  CArray out({4, 4});
  auto r = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < 4; ++i)
    for (py::ssize_t j = 0; j < 4; ++j) r(i, j) = m(i, j);
  return out;
}

Matrix4 from_numpy(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != 4 || a.shape(1) != 4)
    throw py::value_error("expected a 4x4 array");
  auto r = a.unchecked<2>();
  Matrix4 m;
  for (py::ssize_t i = 0; i < 4; ++i)
    for (py::ssize_t j = 0; j < 4; ++j) m(i, j) = r(i, j);
  return m;
}

py::list directions(const std::vector<MeasurementDirection>& ds) {
  py::list out;
  for (const auto& d : ds) out.append(py::make_tuple(d.theta(), d.psi()));
  return out;
}

py::dict result_dict(const DiscordResult& r) {
  py::dict d;
  d["fidelity"] = r.fidelity;
  d["discord"] = r.discord;
  d["method"] = std::string(to_string(r.method));
  d["degenerate_family"] = std::string(to_string(r.degenerate_family));
  d["directions"] = directions(r.optimal_directions);
  return d;
}

GridConfig grid(int n_theta, int n_psi, int refine_iters) {
  GridConfig g;
  g.n_theta = n_theta;
  g.n_psi = n_psi;
  g.refine_iters = refine_iters;
  g.validate();
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bures geometric discord of two-qubit states";

  static py::exception<Error> error(m, "XqdError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<XStateParams>(m, "XStateParams")
      .def(py::init([](double a, double b, double c, double d, Complex x, Complex y) {
             XStateParams p;
             p.a = a;
             p.b = b;
             p.c = c;
             p.d = d;
             p.x = x;
             p.y = y;
             return p;
           }),
           py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("x") = Complex(0.0),
           py::arg("y") = Complex(0.0))
      .def_readwrite("a", &XStateParams::a)
      .def_readwrite("b", &XStateParams::b)
      .def_readwrite("c", &XStateParams::c)
      .def_readwrite("d", &XStateParams::d)
      .def_readwrite("x", &XStateParams::x)
      .def_readwrite("y", &XStateParams::y)
      .def("is_symmetric_family", &XStateParams::is_symmetric_family)
      .def("__repr__", [](const XStateParams& p) {
        return "XStateParams(a=" + std::to_string(p.a) + ", b=" + std::to_string(p.b) +
               ", c=" + std::to_string(p.c) + ", d=" + std::to_string(p.d) + ")";
      });

  m.def("werner", &werner_params, py::arg("w"));
  m.def("x_state", [](const XStateParams& p) { return to_numpy(x_state(p)); }, py::arg("params"));
  m.def("fidelity", [](const CArray& r, const CArray& s) {
    return fidelity(from_numpy(r), from_numpy(s));
  });
  m.def("bures_distance_sq", [](const CArray& r, const CArray& s) {
    return bures_distance_sq(from_numpy(r), from_numpy(s));
  });
  m.def("fidelity_at_direction",
        [](const CArray& rho, double theta, double psi) {
          return fidelity_at_direction(from_numpy(rho), MeasurementDirection::from_angles(theta, psi));
        },
        py::arg("rho"), py::arg("theta"), py::arg("psi"));
  m.def("discord_bruteforce",
        [](const CArray& rho, int n_theta, int n_psi, int refine_iters) {
          return result_dict(max_fidelity_bruteforce(from_numpy(rho), grid(n_theta, n_psi, refine_iters)));
        },
        py::arg("rho"), py::arg("n_theta") = 64, py::arg("n_psi") = 128,
        py::arg("refine_iters") = 200);
  m.def("closest_classical_state",
        [](const CArray& rho, double theta, double psi) {
          const CcsResult r =
              ccs_from_measurement(from_numpy(rho), MeasurementDirection::from_angles(theta, psi));
          return py::make_tuple(to_numpy(r.ccs), r.fidelity_check);
        },
        py::arg("rho"), py::arg("theta"), py::arg("psi"));
  m.def("entropic_discord", [](const CArray& rho) {
    const EntropicResult r = entropic_discord(from_numpy(rho));
    return py::make_tuple(r.classical_corr, r.discord);
  });

  m.def("symmetric_fidelity", [](const XStateParams& p) {
    const SymmetricSolution s = symmetric_fidelity(p);
    py::dict d = result_dict(s.result);
    d["case"] = std::string(to_string(s.branch.kind));
    return d;
  });
  m.def("candidate_discord", [](const XStateParams& p) {
    const CandidateSolution s = x_candidate_discord(p);
    py::dict d = result_dict(s.result);
    d["f_axial"] = s.breakdown.f_axial;
    d["f_equatorial"] = s.breakdown.f_equatorial;
    return d;
  });
  m.def("degenerate_fidelity", [](const XStateParams& p) {
    const DegenerateSolution s = degenerate_fidelity(p);
    return py::make_tuple(s.fidelity, s.m_opt);
  });
  m.def("discord_upper_bound", [](const XStateParams& p) { return discord_upper_bound(p).d_upper; });
  m.def("classical_correlation", [](const XStateParams& p) {
    return classical_correlation_symmetric(p).c_bu;
  });
  m.def("char_poly_coeffs",
        [](const XStateParams& p, double mm, double psi) {
          const CharPolyCoeffs c = char_poly_coeffs(p, mm, psi);
          return py::make_tuple(c.t3, c.t2, c.t1, c.t0);
        },
        py::arg("params"), py::arg("m"), py::arg("psi"));
}
