#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modalk/formula.hpp"
#include "modalk/generator.hpp"
#include "modalk/kripke.hpp"
#include "modalk/measures.hpp"
#include "modalk/reduction.hpp"
#include "modalk/solvers.hpp"

namespace py = pybind11;
using namespace modalk;

namespace {

Algo algo_from_name(const std::string& name) {
  if (name == "width") return Algo::Width;
  if (name == "depth") return Algo::Depth;
  if (name == "diamond") return Algo::Diamond;
  if (name == "brute") return Algo::Brute;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

SolverOptions make_options(int max_states, double budget_seconds,
                           bool witness) {
  SolverOptions opts;
  opts.brute_max_states = max_states;
  opts.wall_seconds = budget_seconds;
  opts.width_witness = witness;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_modalk, m) {
  m.doc() = "modal logic K: formulas, measures, model checking, solvers";

  py::class_<Formula>(m, "Formula")
      .def_static("var", &Formula::var)
      .def_static("top", &Formula::top)
      .def_static("bot", &Formula::bot)
      .def_static("negation", &Formula::negation)
      .def_static("conjunction", &Formula::conjunction)
      .def_static("disjunction", &Formula::disjunction)
      .def_static("box", &Formula::box)
      .def_static("dia", &Formula::dia)
      .def("__str__", [](const Formula& f) { return print(f); })
      .def("__repr__",
           [](const Formula& f) { return "parse(\"" + print(f) + "\")"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", [](const Formula& f) { return f.hash(); })
      .def("tree_size", &Formula::tree_size);

  py::class_<KripkeModel>(m, "KripkeModel")
      .def_static("from_json", &KripkeModel::from_json)
      .def("to_json", &KripkeModel::to_json)
      .def("num_states", &KripkeModel::num_states);

  py::register_exception<ParseError>(m, "FormulaParseError", PyExc_ValueError);
  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<DimacsError>(m, "DimacsError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError",
                                        PyExc_RuntimeError);

  m.def("parse", &parse, py::arg("text"));
  m.def("print_formula", &print, py::arg("f"));
  m.def("to_nnf", &to_nnf, py::arg("f"));
  m.def("variables", &variables, py::arg("f"));

  m.def(
      "measure",
      [](const Formula& f) {
        MeasureReport r = measure_all(f);
        py::dict d;
        d["v"] = r.v;
        d["md"] = r.md;
        d["dd"] = r.dd;
        d["dbox"] = r.dbox;
        d["mw"] = r.mw;
        d["widths"] = r.widths;
        return d;
      },
      py::arg("f"));

  m.def(
      "model_check",
      [](const KripkeModel& m_, int state, const Formula& f) {
        return model_check(m_, state, f);
      },
      py::arg("model"), py::arg("state"), py::arg("f"));

  m.def(
      "solve",
      [](const Formula& f, const std::string& algo, int max_states,
         double budget_seconds, bool witness) {
        SatResult r = solve(f, algo_from_name(algo),
                            make_options(max_states, budget_seconds, witness));
        py::dict d;
        d["verdict"] = std::string(to_string(r.verdict));
        if (r.witness) {
          py::dict w;
          w["model"] = r.witness->model.to_json();
          w["root"] = r.witness->root;
          d["witness"] = w;
        } else {
          d["witness"] = py::none();
        }
        d["candidates"] = r.stats.candidates;
        d["complete"] = r.stats.complete;
        return d;
      },
      py::arg("f"), py::arg("algo") = "width", py::arg("max_states") = 4,
      py::arg("budget_seconds") = 300.0, py::arg("witness") = false);

  m.def(
      "valid",
      [](const Formula& f, const std::string& algo) {
        ValidResult r = valid(f, algo_from_name(algo));
        switch (r.verdict) {
          case ValidResult::Verdict::Valid: return std::string("VALID");
          case ValidResult::Verdict::NotValid: return std::string("NOT_VALID");
          default: return std::string("UNKNOWN");
        }
      },
      py::arg("f"), py::arg("algo") = "width");

  m.def("parse_dimacs", [](const std::string& text) {
    CnfInstance cnf = parse_dimacs(text);
    return py::make_tuple(cnf.num_vars, cnf.clauses);
  });
  m.def("numeral", &numeral, py::arg("n"));
  m.def(
      "encode_dimacs",
      [](const std::string& text) { return encode(parse_dimacs(text)); },
      py::arg("text"));
  m.def(
      "reduction_witness",
      [](const std::string& text) -> py::object {
        CnfInstance cnf = parse_dimacs(text);
        auto a = brute_prop(cnf);
        if (!a) return py::none();
        ReductionWitness w = witness_model(cnf, *a);
        py::dict d;
        d["model"] = w.model.to_json();
        d["root"] = w.root;
        return d;
      },
      py::arg("text"));

  m.def(
      "random_formula",
      [](std::uint64_t seed, int num_vars, int max_depth) {
        std::mt19937_64 rng(seed);
        return random_formula(rng, num_vars, max_depth);
      },
      py::arg("seed"), py::arg("num_vars") = 2, py::arg("max_depth") = 5);
}
