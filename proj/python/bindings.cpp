#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "../tools/commands.hpp"
#include "mackeylab/bredon.hpp"
#include "mackeylab/error.hpp"
#include "mackeylab/transfer.hpp"

namespace py = pybind11;
using namespace mackeylab;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
Json from_python(const py::object& o) { return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

py::int_ big(const Int& v) { return py::int_(py::module_::import("builtins").attr("int")(v.get_str())); }

SubId target_id(const py::object& k) { return k.is_none() ? kTerminal : k.cast<SubId>(); }

}  // namespace

PYBIND11_MODULE(mackeylab, m) {
  m.doc() = "Mackey functors and Bredon modules over finite groups";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<AbelianGroup>(m, "AbelianGroup")
      .def_readonly("rank", &AbelianGroup::rank)
      .def_property_readonly("torsion",
                             [](const AbelianGroup& a) {
                               py::list out;
                               for (const auto& t : a.torsion) out.append(big(t));
                               return out;
                             })
      .def("is_zero", &AbelianGroup::is_zero)
      .def("__eq__", [](const AbelianGroup& a, const AbelianGroup& b) { return a == b; })
      .def("__str__", &AbelianGroup::to_string)
      .def("__repr__", [](const AbelianGroup& a) { return "AbelianGroup(" + a.to_string() + ")"; });

  py::class_<FiniteGroup, std::shared_ptr<FiniteGroup>>(m, "Group")
      .def_static("named", [](const std::string& n) { return std::const_pointer_cast<FiniteGroup>(named_group(n)); })
      .def_static("from_json", [](const py::object& o) { return std::const_pointer_cast<FiniteGroup>(group_from_json(from_python(o))); })
      .def("to_json", [](const FiniteGroup& g) { return to_python(group_to_json(g)); })
      .def_property_readonly("name", &FiniteGroup::name)
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("subgroup_count", &FiniteGroup::subgroup_count)
      .def_property_readonly("class_count", &FiniteGroup::class_count)
      .def("subgroup_order", [](const FiniteGroup& g, SubId h) { return g.subgroup(h).order(); })
      .def("class_of", &FiniteGroup::class_of)
      .def("is_subgroup", &FiniteGroup::is_subgroup)
      .def("table_of_marks", [](const FiniteGroup& g) { return table_of_marks(g); });

  py::class_<MackeySystem>(m, "System")
      .def_static("full", [](std::shared_ptr<FiniteGroup> g) { return MackeySystem::full(g); })
      .def_static("with_family", [](std::shared_ptr<FiniteGroup> g, const std::vector<SubId>& f) {
        return MackeySystem::with_family(g, f);
      })
      .def_static("from_json", [](std::shared_ptr<FiniteGroup> g, const py::object& o) {
        return system_from_json(g, from_python(o));
      })
      .def("to_json", [](const MackeySystem& s) { return to_python(system_to_json(s)); })
      .def("family", &MackeySystem::family)
      .def("opens", &MackeySystem::opens)
      .def("validate", [](const MackeySystem& s) {
        py::list out;
        for (const auto& v : s.validate().violations) out.append(to_python(violation_to_json(v)));
        return out;
      });

  py::class_<MackeyCategory, std::shared_ptr<MackeyCategory>>(m, "MackeyCategory")
      .def(py::init<MackeySystem>())
      .def_property_readonly("objects", &MackeyCategory::objects)
      .def_property_readonly("adjoined_terminal", &MackeyCategory::adjoined_terminal)
      .def("hom_rank", [](const MackeyCategory& c, SubId h, const py::object& k) { return c.hom_rank(h, target_id(k)); },
           py::arg("source"), py::arg("target") = py::none())
      .def("hom_basis",
           [](const MackeyCategory& c, SubId h, const py::object& k) {
             std::vector<std::string> out;
             for (const auto& s : c.hom_basis(h, target_id(k))) out.push_back(c.span_string(s));
             return out;
           },
           py::arg("source"), py::arg("target") = py::none())
      .def("compose_basic",
           [](const MackeyCategory& c, SubId h, SubId k, const py::object& z, std::size_t f, std::size_t g) {
             py::list out;
             for (const auto& v : c.compose_basic(c.hom_basis(k, target_id(z)).at(f), c.hom_basis(h, k).at(g))) out.append(big(v));
             return out;
           },
           "coefficients of basis f of [K, Z] after basis g of [H, K]")
      .def("burnside_labels", [](const MackeyCategory& c, SubId h) { return c.burnside_eval(h).labels; })
      .def("ext_burnside",
           [](const MackeyCategory& c, std::size_t k) {
             auto b = c.burnside_module();
             return ext(b, b, k).group;
           },
           "Ext^k(B, B)");

  m.def("bredon_cohomology",
        [](const MackeySystem& s, std::size_t k) {
          OrbitCategory oc(s);
          return bredon_ext(oc, oc.constant_module(), k).group;
        },
        "H^k with constant coefficients over the orbit category");

  m.def("run",
        [](const std::string& command, const py::kwargs& kw) {
          cli::Options o;
          for (auto [key, value] : kw) {
            std::string k = key.cast<std::string>();
            if (k == "group") o.group = value.cast<std::string>();
            else if (k == "system") o.system = value.cast<std::string>();
            else if (k == "source") o.from = value.cast<std::string>();
            else if (k == "via") o.via = value.cast<std::string>();
            else if (k == "target") o.to = value.cast<std::string>();
            else if (k == "first") o.first = value.cast<std::size_t>();
            else if (k == "second") o.second = value.cast<std::size_t>();
            else if (k == "module") o.module = value.cast<std::string>();
            else if (k == "target_module") o.target = value.cast<std::string>();
            else if (k == "tower") o.tower = value.cast<std::string>();
            else if (k == "thread") o.thread = value.cast<std::string>();
            else if (k == "depth") o.depth = value.cast<std::size_t>();
            else if (k == "max_rank") o.max_rank = value.cast<std::size_t>();
            else if (k == "verify") o.verify = value.cast<bool>();
            else throw InputError("UnknownOption", k);
          }
          static const std::map<std::string, cli::Report (*)(const cli::Options&)> table{
              {"validate", cli::validate}, {"lattice", cli::lattice},         {"marks", cli::marks},
              {"hom", cli::hom},           {"compose", cli::compose},         {"burnside", cli::burnside},
              {"resolve", cli::resolve},   {"ext", cli::ext},                 {"bredon-ext", cli::bredon_ext},
              {"ind", cli::ind},           {"res", cli::res},                 {"adjoint", cli::adjoint},
              {"tower-colim", cli::tower_colim}, {"tower-eval", cli::tower_eval}, {"compare-dims", cli::compare_dims}};
          auto it = table.find(command);
          if (it == table.end()) throw InputError("UnknownCommand", command);
          return to_python(it->second(o).json);
        },
        py::arg("command"), "run a CLI subcommand and return its JSON report");
}
