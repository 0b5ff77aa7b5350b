#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cosetcx/buildings.hpp"
#include "cosetcx/catalog.hpp"
#include "cosetcx/cmcheck.hpp"
#include "cosetcx/cosetcomplex.hpp"
#include "cosetcx/errors.hpp"
#include "cosetcx/fundgroup.hpp"
#include "cosetcx/homology.hpp"

namespace py = pybind11;
using namespace cosetcx;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object verdict_to_python(const Verdict& v) { return to_python(v.to_json()); }

ConnectivityOptions connectivity_options(std::size_t budget) {
  ConnectivityOptions o;
  if (budget > 0) o.quotient.node_budget = budget;
  return o;
}

CheckOptions check_options(const std::string& coeff, int m, std::size_t budget) {
  CheckOptions o;
  o.coeff = Coefficients::parse(coeff);
  o.m = m;
  if (budget > 0) {
    o.connectivity.quotient.node_budget = budget;
    o.shelling_budget = budget;
  }
  return o;
}

std::vector<std::vector<std::string>> named_facets(const SimplicialComplex& x) {
  std::vector<std::vector<std::string>> out;
  for (const auto& f : x.facets()) {
    std::vector<std::string> names;
    for (Vertex v : f) names.push_back(x.vertex_name(v));
    out.push_back(std::move(names));
  }
  return out;
}

SimplicialComplex subgroup_coset_complex(const std::vector<std::string>& generators, std::size_t degree,
                                         const std::vector<std::vector<std::string>>& subgroups) {
  std::vector<Permutation> gens;
  for (const auto& g : generators) gens.push_back(Permutation::from_cycles(g, degree));
  auto group = generate_group(std::move(gens), degree);
  std::vector<Subgroup> members;
  for (const auto& sub : subgroups) {
    std::vector<ElementIndex> idx;
    for (const auto& g : sub) idx.push_back(group->require_index(Permutation::from_cycles(g, degree)));
    members.push_back(Subgroup::generated_by(group, idx));
  }
  return coset_complex(SubgroupFamily(group, std::move(members))).complex;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coset complexes, Cohen-Macaulay certificates and higher generation";

  py::register_exception<Error>(m, "CosetcxError");
  py::register_exception<InvariantViolation>(m, "InvariantViolation");

  py::class_<SimplicialComplex>(m, "SimplicialComplex")
      .def(py::init([](std::vector<Simplex> facets) { return SimplicialComplex::from_facets(std::move(facets)); }),
           py::arg("facets"))
      .def_property_readonly("dimension", &SimplicialComplex::dimension)
      .def_property_readonly("f_vector", &SimplicialComplex::f_vector)
      .def_property_readonly("facets", &SimplicialComplex::facets)
      .def_property_readonly("named_facets", &named_facets)
      .def("is_pure", &SimplicialComplex::is_pure)
      .def("link", [](const SimplicialComplex& x, const Simplex& s) { return link(x, s); })
      .def("barycentric_subdivision", [](const SimplicialComplex& x) { return barycentric_subdivision(x).complex; })
      .def("__eq__", [](const SimplicialComplex& a, const SimplicialComplex& b) { return a == b; })
      .def("__repr__", [](const SimplicialComplex& x) {
        std::string s = "SimplicialComplex(f_vector=[";
        const auto f = x.f_vector();
        for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + std::to_string(f[i]);
        return s + "])";
      });

  m.def("parse_facet_list", &parse_facet_list, py::arg("text"));
  m.def("simplex_boundary", &simplex_boundary, py::arg("k"));

  m.def(
      "reduced_homology",
      [](const SimplicialComplex& x, const std::string& coeff) {
        return to_python(reduced_homology(x, Coefficients::parse(coeff)).to_json());
      },
      py::arg("complex"), py::arg("coeff") = "z");
  m.def(
      "smith_normal_form",
      [](const std::vector<std::vector<long long>>& rows) {
        std::vector<std::string> out;
        for (const auto& d : smith_normal_form(IntegerMatrix::from_dense(rows)).diagonal) out.push_back(to_string(d));
        py::list result;
        for (const auto& s : out) result.append(py::int_(py::str(s)));
        return result;
      },
      py::arg("rows"), "Invariant factors of an integer matrix given as a list of rows.");
  m.def(
      "cm_over",
      [](const SimplicialComplex& x, const std::string& coeff) {
        return to_python(cm_over(x, Coefficients::parse(coeff)).to_json(x));
      },
      py::arg("complex"), py::arg("coeff") = "z");
  m.def(
      "homotopy_cm",
      [](const SimplicialComplex& x, std::size_t budget) {
        return to_python(homotopy_cm(x, connectivity_options(budget)).to_json(x));
      },
      py::arg("complex"), py::arg("budget") = 0);
  m.def(
      "connectivity",
      [](const SimplicialComplex& x, int k, std::size_t budget) {
        return verdict_to_python(connectivity_certificate(x, k, connectivity_options(budget)));
      },
      py::arg("complex"), py::arg("k"), py::arg("budget") = 0);
  m.def(
      "fundamental_group",
      [](const SimplicialComplex& x) {
        auto fg = fundamental_group(x);
        py::dict d;
        d["raw"] = fg.raw.presentation.to_text();
        d["simplified"] = fg.simplified.presentation.to_text();
        d["abelianization"] = fg.abelian.to_string();
        return d;
      },
      py::arg("complex"));
  m.def(
      "shelling_search",
      [](const SimplicialComplex& x, std::size_t budget) { return verdict_to_python(shelling_search(x, budget)); },
      py::arg("complex"), py::arg("budget") = 1'000'000);
  m.def("coset_complex", &subgroup_coset_complex, py::arg("generators"), py::arg("degree"), py::arg("subgroups"),
        "Coset complex of the group generated by `generators` (cycle notation) and the subgroups generated by "
        "each list in `subgroups`.");
  m.def(
      "enumerate_subspaces",
      [](int n, int p, int dim) {
        std::vector<std::string> out;
        for (const auto& u : enumerate_subspaces(n, p, dim)) out.push_back(u.to_string());
        return out;
      },
      py::arg("n"), py::arg("p"), py::arg("dim"));

  py::class_<NamedExample>(m, "Example")
      .def_property_readonly("name", [](const NamedExample& x) { return x.id.to_string(); })
      .def_property_readonly("description", [](const NamedExample& x) { return x.description; })
      .def_property_readonly("complex", [](const NamedExample& x) { return x.complex; })
      .def_property_readonly("group_order",
                             [](const NamedExample& x) -> py::object {
                               if (!x.group) return py::none();
                               return py::int_(x.group->order());
                             })
      .def("summary", [](const NamedExample& x) { return to_python(example_summary(x)); })
      .def("applicable_checks",
           [](const NamedExample& x) {
             std::vector<std::string> out;
             for (const auto& c : check_names()) {
               if (check_applies(x, c)) out.push_back(c);
             }
             return out;
           })
      .def(
          "verify",
          [](const NamedExample& x, const std::string& check, const std::string& coeff, int m, std::size_t budget) {
            return to_python(run_check(x, check, check_options(coeff, m, budget)).to_json(false));
          },
          py::arg("check"), py::arg("coeff") = "z", py::arg("m") = 1, py::arg("budget") = 0)
      .def(
          "report",
          [](const NamedExample& x, const std::string& coeff, std::size_t budget, unsigned seed) {
            return to_python(build_report(x, check_options(coeff, 1, budget), {}, seed).to_json(false));
          },
          py::arg("coeff") = "z", py::arg("budget") = 0, py::arg("seed") = 0);

  m.def(
      "build",
      [](const std::string& name, std::size_t cap) { return build_named(name, CatalogOptions{cap}); },
      py::arg("name"), py::arg("cap") = FiniteGroup::kDefaultCap,
      "Build a catalog example such as 'alt5_acyclic' or 'building_A(3,2)'.");
  m.def("example_names", &example_names);
  m.def("check_names", &check_names);
}
