#include "polyband/analysis.hpp"
#include "polyband/floquet.hpp"
#include "polyband/free_electron.hpp"
#include "polyband/hmo.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace polyband;

namespace {

ModelConstants constants(double beta, double epsilon) {
  ModelConstants c;
  c.beta_eV = beta;
  c.epsilon_eV = epsilon;
  c.validate();
  return c;
}

py::dict bands_dict(const floquet::BandStructure& bs) {
  py::list bands, flat;
  for (const auto& b : bs.bands) bands.append(py::make_tuple(b.lo, b.hi, b.flat));
  for (const auto& f : bs.flat_levels) flat.append(py::make_tuple(f.value, f.multiplicity));
  py::dict d;
  d["bands"] = bands;
  d["flat_levels"] = flat;
  d["k"] = bs.k_grid;
  d["dispersion"] = bs.dispersion;
  d["valence_index"] = bs.valence_index;
  d["conduction_index"] = bs.conduction_index;
  d["gap"] = floquet::band_gap(bs);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hückel and free-electron band gaps of conjugated oligomers and polymers";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::enum_<Model>(m, "Model").value("HMO", Model::Hmo).value("FE", Model::Fe);

  py::class_<MonomerSpec>(m, "Monomer")
      .def_readonly("name", &MonomerSpec::name)
      .def_readonly("n_atoms", &MonomerSpec::n_atoms)
      .def_readonly("bonds", &MonomerSpec::bonds)
      .def_readonly("link_b", &MonomerSpec::link_b)
      .def_readonly("link_e", &MonomerSpec::link_e)
      .def_readonly("dangling", &MonomerSpec::dangling)
      .def_readonly("n_double_bonds", &MonomerSpec::n_double_bonds)
      .def_readonly("trim_last", &MonomerSpec::trim_last)
      .def("adjacency", &MonomerSpec::adjacency)
      .def("to_json", [](const MonomerSpec& s) { return serialize_monomer(s); })
      .def("__eq__", [](const MonomerSpec& a, const MonomerSpec& b) { return a == b; })
      .def("__repr__", [](const MonomerSpec& s) { return "<Monomer " + s.name + ">"; });

  m.def("parse_monomer", [](const std::string& text) { return parse_monomer(text); }, py::arg("text"));
  m.def("load_monomer", &load_monomer_file, py::arg("path"));
  m.def("catalog", [] { return catalog(); });
  m.def("monomer", [](const std::string& name) { return catalog_monomer(name); }, py::arg("name"));

  m.def(
      "oligomer_adjacency",
      [](const MonomerSpec& s, int count, bool dangling) { return build_oligomer(s, count, dangling).adjacency(); },
      py::arg("monomer"), py::arg("m"), py::arg("dangling") = false);

  m.def(
      "hmo_gap", [](const MonomerSpec& s, int count, double beta) { return hmo::gap(s, count, constants(beta, 1.95)); },
      py::arg("monomer"), py::arg("m"), py::arg("beta") = 3.05);
  m.def(
      "fe_gap", [](const MonomerSpec& s, int count, double eps) { return fe::gap(s, count, constants(3.05, eps)); },
      py::arg("monomer"), py::arg("m"), py::arg("epsilon") = 1.95);
  m.def(
      "fe_levels",
      [](const MonomerSpec& s, int count, int n) { return fe::levels(build_oligomer(s, count, true), n).mu_values; },
      py::arg("monomer"), py::arg("m"), py::arg("count"));
  m.def(
      "polymer_gap",
      [](const MonomerSpec& s, Model model, double beta, double eps) {
        return floquet::polymer_gap(s, model, constants(beta, eps));
      },
      py::arg("monomer"), py::arg("model") = Model::Hmo, py::arg("beta") = 3.05, py::arg("epsilon") = 1.95);

  m.def("band_edges", &floquet::band_edges, py::arg("monomer"));
  m.def(
      "band_structure",
      [](const MonomerSpec& s, Model model, int k_samples) {
        return bands_dict(model == Model::Hmo ? floquet::band_structure(s, k_samples)
                                              : floquet::fe_band_structure(s, k_samples));
      },
      py::arg("monomer"), py::arg("model") = Model::Hmo, py::arg("k_samples") = 721);

  m.def(
      "counting_breakpoints",
      [](const MonomerSpec& s, int count, Model model) { return analysis::counting_function(s, count, model).breakpoints; },
      py::arg("monomer"), py::arg("m"), py::arg("model") = Model::Hmo);

  m.def(
      "gap_sweep",
      [](const MonomerSpec& s, const std::vector<int>& ms, Model model) {
        const auto series = analysis::gap_sweep(s, ms, model);
        py::list rows;
        for (const auto& e : series.entries) rows.append(py::make_tuple(e.m, e.gap_eV));
        return py::make_tuple(rows, series.polymer_limit);
      },
      py::arg("monomer"), py::arg("m_list"), py::arg("model") = Model::Hmo);
}
