#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symrep/characters.hpp"
#include "symrep/decomp.hpp"
#include "symrep/pipeline.hpp"

namespace py = pybind11;
using namespace symrep;

namespace {

// Group from a config plus a registry that persists across calls.
class Session {
 public:
  explicit Session(const std::string& config_text)
      : cfg_(parse_config(config_text)), g_(config_group(cfg_)), reg_(g_) {
    register_regular(reg_, cfg_.seed);
  }

  std::uint64_t order() const { return g_->order; }
  std::uint32_t characteristic() const { return g_->p(); }
  std::size_t dim() const { return g_->rep.dim; }

  std::vector<std::pair<ClassId, std::int64_t>> decompose_sym(std::size_t n) {
    auto v = decompose(sym_power(g_, n, cfg_.max_dim), reg_, derive_seed(cfg_.seed, n));
    return {v.begin(), v.end()};
  }

  std::vector<std::pair<ClassId, std::int64_t>> regular() const {
    auto v = reg_.regular_vector().value_or(DecompVector{});
    return {v.begin(), v.end()};
  }

  std::size_t class_dim(ClassId id) const { return reg_.entry(id).rep.dim(); }
  bool class_projective(ClassId id) const { return reg_.entry(id).projective; }
  std::size_t num_classes() const { return reg_.size(); }

  std::vector<std::int64_t> sym_dims(std::size_t max_degree) const {
    std::vector<std::int64_t> out;
    for (std::size_t n = 0; n <= max_degree; ++n) out.push_back(static_cast<std::int64_t>(binomial(n + dim() - 1, n)));
    return out;
  }

 private:
  JobConfig cfg_;
  GroupPtr g_;
  Registry reg_;
};

std::string run_text(const std::string& config_text) { return canonical_json(run(parse_config(config_text)).report); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "symrep: decompositions of symmetric powers of modular representations";
  m.attr("__version__") = SYMREP_VERSION;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("run_json", &run_text, py::arg("config"), py::call_guard<py::gil_scoped_release>(),
        "Run the checks of a JSON config; returns the canonical report text.");
  m.def("known_checks", &known_checks);
  m.def("sha256_hex", &sha256_hex);

  py::class_<Session>(m, "Session")
      .def(py::init<const std::string&>(), py::arg("config"))
      .def_property_readonly("order", &Session::order)
      .def_property_readonly("characteristic", &Session::characteristic)
      .def_property_readonly("dim", &Session::dim)
      .def_property_readonly("num_classes", &Session::num_classes)
      .def("decompose_sym", &Session::decompose_sym, py::arg("n"))
      .def("regular", &Session::regular)
      .def("class_dim", &Session::class_dim, py::arg("id"))
      .def("class_projective", &Session::class_projective, py::arg("id"))
      .def("sym_dims", &Session::sym_dims, py::arg("max_degree"));
}
