#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "epilip/cli.hpp"
#include "epilip/lp.hpp"
#include "epilip/pareto.hpp"
#include "epilip/polyhedra.hpp"
#include "epilip/sensitivity.hpp"
#include "epilip/verify.hpp"

namespace py = pybind11;
using namespace epilip;

namespace {

// Rationals cross the boundary as fractions.Fraction.
py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::str(to_string(r)));
}

py::list fractions(VectorView v) {
  py::list out;
  for (const auto& r : v) out.append(fraction(r));
  return out;
}

py::list point_list(const std::vector<Vector>& vs) {
  py::list out;
  for (const auto& v : vs) out.append(fractions(v));
  return out;
}

// Accepts ints, strings and Fractions: anything whose str() is a rational.
Vector to_vector(const py::iterable& values) {
  Vector out;
  for (auto v : values) out.push_back(parse_rational(std::string(py::str(v))));
  return out;
}

py::dict magnitude(const Magnitude& m) {
  py::dict d;
  d["text"] = m.to_string();
  d["square"] = m.is_infinite() ? py::none() : fraction(m.square());
  d["exact"] = m.exact() ? fraction(*m.exact()) : py::none();
  d["approx"] = m.approx();
  return d;
}

py::list systems_rows(const SymbolicSystem& sys) {
  py::list rows;
  for (const auto& r : sys.rows) rows.append(r.to_string());
  return rows;
}

py::dict system_dict(const SymbolicSystem& sys) {
  py::dict d;
  d["rows"] = systems_rows(sys);
  py::list conds;
  for (const auto& f : sys.consistency) conds.append(f.to_string());
  d["conditions"] = conds;
  return d;
}

py::dict subdiff_dict(const SubdiffSet& set) {
  py::dict d;
  d["exactness"] = std::string(exactness_name(set.exactness));
  py::list pieces;
  for (const auto& p : set.pieces) {
    py::dict piece;
    piece["weight"] = fractions(p.weight);
    piece["scale"] = magnitude(p.scale);
    piece["active"] = p.active;
    piece["vertices"] = point_list(p.vertices);
    piece["rays"] = point_list(p.rays);
    pieces.append(piece);
  }
  d["pieces"] = pieces;
  return d;
}

SampleConfig sample_config(std::size_t samples, std::uint64_t seed, const std::string& radius) {
  SampleConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.radius = parse_rational(radius);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Lipschitz analysis of RHS-parameterized multiobjective linear programs";

  static py::exception<Error> error_type(m, "EpilipError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(std::string(e.name()) + ": " + e.what());
      exc.attr("name") = std::string(e.name());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Problem>(m, "Problem")
      .def_readonly("n", &Problem::n)
      .def_property_readonly("q", &Problem::q)
      .def_property_readonly("m", &Problem::m)
      .def_property_readonly("objectives", [](const Problem& p) { return point_list(p.objectives); })
      .def_property_readonly("rows", [](const Problem& p) { return point_list(p.rows); })
      .def_property_readonly("nominal", [](const Problem& p) { return fractions(p.nominal); })
      .def_property_readonly("decision_norm", [](const Problem& p) { return std::string(norm_name(p.decision_norm)); })
      .def_property_readonly("image_norm", [](const Problem& p) { return std::string(norm_name(p.image_norm)); })
      .def("image", [](const Problem& p, const py::iterable& x) { return fractions(p.image(to_vector(x))); })
      .def("to_text", &format_problem);

  m.def("parse_problem", [](const std::string& text) { return parse_problem(text); }, py::arg("text"));

  m.def("solve", [](const Problem& p, const py::iterable& b, std::size_t objective) {
        auto out = solve(p.rows, to_vector(b), p.objectives.at(objective));
        py::dict d;
        d["status"] = std::string(status_name(out.status));
        if (out.status == LpStatus::optimal) {
          d["value"] = fraction(out.value);
          d["x"] = fractions(out.primal_point);
          d["dual"] = fractions(out.dual_point);
        }
        return d;
      }, py::arg("problem"), py::arg("b"), py::arg("objective") = 0);

  m.def("epigraph_system", [](const Problem& p) { return system_dict(epigraph_system(p)); });
  m.def("image_epigraph_system", [](const Problem& p) { return system_dict(image_epigraph_system(p)); });
  m.def("eliminate", [](const Problem& p, const std::vector<std::pair<std::string, py::iterable>>& steps,
                        bool prune) {
        std::vector<EliminationStep> s;
        for (const auto& [kind, dir] : steps) {
          if (kind != "cone" && kind != "span") throw py::value_error("step kind must be 'cone' or 'span'");
          s.push_back({kind == "span", to_vector(dir)});
        }
        return system_dict(fold(SymbolicSystem::from_problem(p), s, prune));
      }, py::arg("problem"), py::arg("steps"), py::arg("prune") = true);

  m.def("value_function", [](const Problem& p) {
    auto vf = lp_value_function(p);
    py::dict d;
    py::list pieces, conds;
    for (const auto& f : vf.pieces) pieces.append(f.to_string());
    for (const auto& f : vf.domain_conditions) conds.append(f.to_string());
    d["pieces"] = pieces;
    d["conditions"] = conds;
    d["value_at_nominal"] = vf.in_domain(p.nominal) ? fraction(vf.evaluate(p.nominal)) : py::none();
    return d;
  });

  m.def("subdiff", [](const Problem& p, const std::string& target, const py::iterable& anchor,
                      std::optional<std::size_t> grid) {
        std::size_t k = grid.value_or(WeightGrid::default_resolution(p.q()));
        Vector a = to_vector(anchor);
        if (target == "f")
          return subdiff_dict(subdiff_F(p, p.nominal, a, WeightGrid::simplex(p, GridMode::composite, k)));
        if (target == "p")
          return subdiff_dict(subdiff_P(p, p.nominal, a, WeightGrid::simplex(p, GridMode::image, k)));
        throw py::value_error("target must be 'f' or 'p'");
      }, py::arg("problem"), py::arg("target"), py::arg("anchor"), py::arg("grid") = py::none());

  m.def("modulus", [](const Problem& p, const std::string& target, const py::iterable& anchor,
                      std::optional<std::size_t> grid) {
        auto r = lip_modulus(p, parse_target(target), p.nominal, to_vector(anchor), grid);
        py::dict d = magnitude(r.value);
        d["target"] = std::string(target_name(r.target));
        d["exactness"] = std::string(exactness_name(r.exactness));
        d["active_pieces"] = r.active_pieces;
        d["attaining_weight"] = r.attaining_weight ? py::object(fractions(*r.attaining_weight)) : py::none();
        return d;
      }, py::arg("problem"), py::arg("target"), py::arg("anchor"), py::arg("grid") = py::none());

  m.def("pareto_point", [](const Problem& p, const py::iterable& b, const py::iterable& w) {
    auto pt = pareto_point(p, to_vector(b), to_vector(w));
    return py::make_tuple(fractions(pt.p), fractions(*pt.witness));
  });
  m.def("is_nondominated", [](const Problem& p, const py::iterable& b, const py::iterable& x) {
    return is_nondominated(p, to_vector(b), to_vector(x));
  });
  m.def("dominate", [](const Problem& p, const py::iterable& b, const py::iterable& x) {
    return fractions(dominate_to_nondominated(p, to_vector(b), to_vector(x)).x);
  });

  m.def("empirical_lip", [](const Problem& p, const std::string& kind, const py::iterable& anchor,
                            std::size_t samples, std::uint64_t seed, const std::string& radius) {
        MappingKind mk = kind == "ef" ? MappingKind::EF : kind == "ep" ? MappingKind::EP : MappingKind::P;
        if (kind != "ef" && kind != "ep" && kind != "p") throw py::value_error("kind must be 'ef', 'ep' or 'p'");
        auto est = empirical_lip(p, mk, p.nominal, to_vector(anchor), sample_config(samples, seed, radius));
        py::dict d = magnitude(est.value);
        d["pairs_used"] = est.pairs_used;
        return d;
      }, py::arg("problem"), py::arg("kind"), py::arg("anchor"), py::arg("samples") = 1000,
      py::arg("seed") = 1, py::arg("radius") = "1/10");

  m.def("convexity_check", [](const Problem& p, std::size_t samples, std::uint64_t seed) {
        return convexity_check(p, sample_config(samples, seed, "1/10")).ok;
      }, py::arg("problem"), py::arg("samples") = 500, py::arg("seed") = 1);

  m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"epilip"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      }, py::arg("args"));
}
