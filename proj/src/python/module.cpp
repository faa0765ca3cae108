#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weakwave/cli.hpp"
#include "weakwave/error.hpp"
#include "weakwave/nvw.hpp"
#include "weakwave/serialize.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace weakwave;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::object slope_py(const Slope& s) {
  if (s.is_finite()) return py::float_(s.value);
  return py::float_(s.inf > 0 ? HUGE_VAL : -HUGE_VAL);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "weak traveling waves: NVW and CH profiles with weak-form checks";

  static py::exception<Error> exc(m, "WeakwaveError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = exc;
      PyErr_SetObject(err.ptr(), py::make_tuple(to_string(e.code()), e.what()).ptr());
    }
  });

  py::class_<Profile>(m, "Profile")
      .def_property_readonly("equation", [](const Profile& p) { return std::string(to_string(p.equation)); })
      .def_property_readonly("s", [](const Profile& p) { return p.s; })
      .def_property_readonly("xi_lo", &Profile::xi_lo)
      .def_property_readonly("xi_hi", &Profile::xi_hi)
      .def_property_readonly("admissible", &Profile::admissible)
      .def_property_readonly("breakpoints",
                             [](const Profile& p) {
                               std::vector<double> v;
                               for (const auto& g : p.breakpoints) v.push_back(g.xi_star);
                               return v;
                             })
      .def("eval",
           [](const Profile& p, double xi) {
             const PointEval e = profile_eval(p, xi);
             return py::make_tuple(e.w, slope_py(e.left_slope), slope_py(e.right_slope));
           })
      .def("sample",
           [](const Profile& p, const std::vector<double>& xs) {
             py::list out;
             for (const auto& r : profile_sample(p, xs))
               out.append(py::make_tuple(r.xi, r.w, slope_py(r.left_slope), r.flag));
             return out;
           })
      .def("to_json", [](const Profile& p) { return to_py(to_json(p)); })
      .def("verify",
           [](const Profile& p, int bumps, std::uint64_t seed) {
             return to_py(to_json(cli::verify_profile(p, bumps, seed)));
           },
           py::arg("bumps") = 16, py::arg("seed") = 0);

  m.def("classify_ch", [](double s, double a, double b) { return to_py(to_json(ch::classify_ch(s, a, b))); },
        py::arg("s"), py::arg("a"), py::arg("b"));
  m.def("classify", [](const py::object& job) { return to_py(cli::classify_report(cli::parse_jobspec(from_py(job)))); },
        py::arg("jobspec"));
  m.def("speed_regime",
        [](const py::object& coef, double s) {
          return to_py(to_json(nvw::speed_regime(coefficient_from_json(from_py(coef)), s)));
        },
        py::arg("coefficient"), py::arg("s"));
  m.def("glue_candidates",
        [](const py::object& coef, double s, double u_lo, double u_hi) {
          json out = json::array();
          for (const auto& c : nvw::glue_candidates(coefficient_from_json(from_py(coef)), s, u_lo, u_hi))
            out.push_back(to_json(c));
          return to_py(out);
        },
        py::arg("coefficient"), py::arg("s"), py::arg("u_lo"), py::arg("u_hi"));
  m.def("build_profile",
        [](const py::object& job, bool checked) { return cli::build_profile(cli::parse_jobspec(from_py(job)), checked); },
        py::arg("jobspec"), py::arg("checked") = true);
  m.def("load_profile", [](const py::object& j) { return profile_from_json(from_py(j)); }, py::arg("profile_json"));
  m.def("sweep",
        [](const py::object& job, int jobs, std::uint64_t seed) {
          return to_py(cli::sweep_table(cli::parse_jobspec(from_py(job)), jobs, seed));
        },
        py::arg("jobspec"), py::arg("jobs") = 1, py::arg("seed") = 0);
  m.def("bump_eval",
        [](double gamma0, double s, double d_x, double t_lo, double t_hi, double t, double x) {
          verify::BumpTestFunction b{gamma0, s, d_x, t_lo, t_hi, 1.0};
          const auto v = verify::bump_eval_all(b, t, x);
          return std::vector<double>(v.begin(), v.end());
        },
        py::arg("gamma0"), py::arg("s"), py::arg("d_x"), py::arg("t_lo"), py::arg("t_hi"), py::arg("t"),
        py::arg("x"));
}
