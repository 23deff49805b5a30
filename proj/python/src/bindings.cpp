// Python bindings. Classes and graphs cross the boundary as JSON text.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "taut/database.hpp"
#include "taut/json_io.hpp"
#include "taut/relations.hpp"

namespace py = pybind11;
using namespace taut;

namespace {

std::string enumerate_graphs(int g, int n, int max_edges) {
  Json out = Json::array();
  for (const auto& G : enumerate_stable_graphs(g, n, max_edges)) out.push_back(graph_to_json(G));
  return out.dump();
}

std::string omega(int g, const RampVector& A, int degree) {
  return class_to_json(omega_constant_term(g, A, degree)).dump();
}

std::string theta(int g, const RampVector& A) { return class_to_json(theta_divisor_at(g, A)).dump(); }

std::string dr_coefficient(int g, const std::vector<int>& monomial, const std::vector<int>& multiplier,
                           const std::vector<int>& forget) {
  return class_to_json(dr_relation_coefficient(g, monomial, multiplier, forget)).dump();
}

std::string express(int g, int n, const std::string& monomial, const std::string& db_path) {
  std::unique_ptr<RelationDatabase> db;
  if (!db_path.empty()) db = std::make_unique<RelationDatabase>(db_path);
  BoundaryEngine engine(db.get());
  return expression_to_json(engine.express(g, n, parse_monomial(monomial, n))).dump();
}

std::string star_reduce(const std::string& cls) {
  return class_to_json(theorem_star_reduce(class_from_json(Json::parse(cls)))).dump();
}

std::string pushforward(const std::string& cls, int m) {
  return class_to_json(pushforward_forgetting(class_from_json(Json::parse(cls)), m)).dump();
}

bool star(const std::string& stratum) { return has_property_star(stratum_from_json(Json::parse(stratum))); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<IntegrityError> integrity(m, "IntegrityError");
  static py::exception<DefectError> defect(m, "DefectError");
  static py::exception<InterpolationMismatch> mismatch(m, "InterpolationMismatch");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const IntegrityError& e) {
      integrity(e.what());
    } catch (const DefectError& e) {
      defect(e.what());
    } catch (const InterpolationMismatch& e) {
      mismatch(e.what());
    }
  });
  m.def("enumerate_graphs", &enumerate_graphs, py::arg("g"), py::arg("n"), py::arg("max_edges"));
  m.def("omega", &omega, py::arg("g"), py::arg("A"), py::arg("degree"));
  m.def("theta", &theta, py::arg("g"), py::arg("A"));
  m.def("dr_coefficient", &dr_coefficient, py::arg("g"), py::arg("monomial"), py::arg("multiplier"),
        py::arg("forget"));
  m.def("express", &express, py::arg("g"), py::arg("n"), py::arg("monomial"), py::arg("db") = "");
  m.def("star_reduce", &star_reduce, py::arg("cls"));
  m.def("pushforward", &pushforward, py::arg("cls"), py::arg("m") = 1);
  m.def("has_property_star", &star, py::arg("stratum"));
}
