#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rvvport/corpus.hpp"
#include "rvvport/error.hpp"
#include "rvvport/liveness.hpp"
#include "rvvport/metrics.hpp"
#include "rvvport/pressure.hpp"
#include "rvvport/prompts.hpp"
#include "rvvport/rvv_front.hpp"
#include "rvvport/vector_type.hpp"

namespace py = pybind11;
using namespace rvvport;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(r.numerator(), r.denominator());
}

py::object from_json(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

FootprintMode mode_arg(const std::string& text) {
  auto m = parse_footprint_mode(text);
  if (!m) throw py::value_error("mode must be paper_literal or physical, got '" + text + "'");
  return *m;
}

py::dict type_dict(const VectorType& t) {
  static const char* kinds[] = {"int", "uint", "float", "mask"};
  py::dict d;
  d["name"] = vector_type_name(t);
  d["kind"] = kinds[static_cast<int>(t.kind)];
  d["sew"] = t.elem_bits;
  d["lmul"] = fraction(t.lmul);
  d["fields"] = t.tuple_fields;
  return d;
}

std::vector<CaseResult> case_results(const py::iterable& rows) {
  std::vector<CaseResult> out;
  for (const auto& row : rows) {
    auto t = row.cast<py::tuple>();
    if (t.size() != 2) throw py::value_error("expected (passed, attempts) pairs");
    CaseResult r;
    r.case_id = "case" + std::to_string(out.size());
    r.passed = t[0].cast<bool>();
    r.attempts_used = t[1].cast<int>();
    r.status = r.passed ? "passed" : "failed";
    out.push_back(r);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Register-pressure analysis and metrics for RVV intrinsic C code.";

  auto base = py::register_exception<Error>(m, "RvvportError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<AnalysisError>(m, "AnalysisError", base);
  py::register_exception<CorpusError>(m, "CorpusError", base);
  py::register_exception<NoCodeError>(m, "NoCodeError", base);
  py::register_exception<ContractError>(m, "ContractError", base);

  m.attr("REGISTER_BUDGET") = kVectorRegisterCount;

  m.def(
      "parse_vector_type",
      [](const std::string& name) -> py::object {
        auto t = parse_vector_type(name);
        return t ? py::object(type_dict(*t)) : py::object(py::none());
      },
      py::arg("name"), "Decode an RVV type name; None when it is not a legal vector type.");

  m.def(
      "vector_type_names",
      [] {
        std::vector<std::string> names;
        for (const auto& t : all_vector_types()) names.push_back(vector_type_name(t));
        return names;
      },
      "Every legal RVV v1.0 vector and mask type name.");

  m.def(
      "register_footprint",
      [](const std::string& name, const std::string& mode) {
        auto t = parse_vector_type(name);
        if (!t) throw py::value_error("not a vector type: " + name);
        return fraction(register_footprint(*t, mode_arg(mode)));
      },
      py::arg("type_name"), py::arg("mode") = "paper_literal");

  m.def(
      "list_functions", [](const std::string& source) { return list_functions(source); }, py::arg("source"));

  m.def(
      "analyze",
      [](const std::string& source, const std::string& function, const std::string& mode) {
        const auto ir = parse_function_named(source, function);
        return from_json(pressure_to_json(analyze_function(ir, mode_arg(mode))));
      },
      py::arg("source"), py::arg("function") = "", py::arg("mode") = "paper_literal",
      "Pressure report of one function as a dict (the same shape as `rvvport analyze --json`).");

  m.def(
      "liveness",
      [](const std::string& source, const std::string& function) {
        const auto ir = parse_function_named(source, function);
        const auto live = solve_liveness(ir);
        py::list rows;
        for (const auto& s : ir.stmts) {
          py::dict d;
          d["id"] = s.id;
          d["line"] = s.span.line;
          d["text"] = s.text;
          d["use"] = std::vector<std::string>(s.uses.begin(), s.uses.end());
          d["def"] = std::vector<std::string>(s.defs.begin(), s.defs.end());
          d["live_in"] = std::vector<std::string>(live.live_in[s.id].begin(), live.live_in[s.id].end());
          d["live_out"] = std::vector<std::string>(live.live_out[s.id].begin(), live.live_out[s.id].end());
          rows.append(d);
        }
        return rows;
      },
      py::arg("source"), py::arg("function") = "", "Per-statement USE/DEF and live sets.");

  m.def(
      "pass_rate", [](int passed, int total) { return fraction(pass_rate(passed, total)); }, py::arg("passed"),
      py::arg("total"));

  m.def(
      "efficiency_score",
      [](const py::iterable& rows, int up_limit, bool include_failed) {
        return fraction(efficiency_score(case_results(rows), up_limit, include_failed));
      },
      py::arg("cases"), py::arg("up_limit") = 10, py::arg("include_failed") = false,
      "Efficiency over (passed, attempts) pairs.");

  m.def(
      "speedup", [](std::int64_t native, std::int64_t translated) { return fraction(speedup(native, translated)); },
      py::arg("native_cost"), py::arg("translated_cost"));

  m.def(
      "extract_code", [](const std::string& response) { return extract_code(response); }, py::arg("response"),
      "The C code block of an LLM response.");

  m.def(
      "load_corpus",
      [](const std::string& dir) {
        const auto listing = load_corpus(dir);
        py::list cases;
        for (const auto& c : listing.cases) {
          py::dict d;
          d["id"] = c.case_id;
          d["dir"] = c.case_dir.string();
          d["signature"] = c.function_signature;
          cases.append(d);
        }
        py::list errors;
        for (const auto& e : listing.errors) errors.append(py::make_tuple(e.case_dir.string(), e.message));
        return py::make_tuple(cases, errors);
      },
      py::arg("corpus_dir"), "(cases, errors) for a corpus directory.");
}
