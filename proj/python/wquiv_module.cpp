// JSON-in, JSON-out bindings. Quivers travel as quiver-file JSON strings so
// the Python side needs no mirror of the C++ types.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wquiv/analysis.hpp"
#include "wquiv/equivalence.hpp"
#include "wquiv/error.hpp"
#include "wquiv/io.hpp"
#include "wquiv/mutation.hpp"
#include "wquiv/session.hpp"
#include "wquiv/tame.hpp"

namespace py = pybind11;
using namespace wquiv;

namespace {

WeightedQuiver load(const std::string& text) { return parse_quiver_file(text).quiver; }

std::string mutate_json(const std::string& text, const std::vector<int>& at, bool lenient) {
  auto res = mutate_sequence(load(text), at, {.lenient = lenient});
  if (res.failure) throw Error(res.failure->code, "step " + std::to_string(res.failure->index) + ": " + res.failure->reason);
  return serialize_quiver(res.records.empty() ? load(text) : res.records.back().result);
}

class PySession {
 public:
  PySession(const std::string& text, bool lenient) : session_(load(text), SessionConfig{.lenient = lenient}) {}

  py::tuple request(const std::string& method, const std::string& path, const std::string& body) {
    auto r = handle_request(session_, method, path, body);
    return py::make_tuple(r.status, dump(r.body));
  }

  std::string current() const { return serialize_quiver(session_.current()); }

 private:
  Session session_;
};

}  // namespace

PYBIND11_MODULE(_wquiv, m) {
  m.doc() = "Mutation of group-weighted quivers";

  static py::exception<Error> error(m, "WquivError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error.ptr())(e.what());
      exc.attr("code") = e.code();
      exc.attr("witness") = e.witness();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("mutate", &mutate_json, py::arg("quiver"), py::arg("at"), py::arg("lenient") = false);
  m.def("frame", [](const std::string& text) { return serialize_quiver(frame(load(text))); });
  m.def("c_vectors", [](const std::string& text) { return dump(c_vectors_to_json(c_vectors(load(text)))); });
  m.def("two_cycles", [](const std::string& text) { return dump(two_cycles_to_json(load(text))); });
  m.def(
      "check_nondegenerate",
      [](const std::string& text, int depth) { return dump(nondegeneracy_to_json(check_nondegenerate(load(text), depth))); },
      py::arg("quiver"), py::arg("depth"));
  m.def(
      "are_equivalent",
      [](const std::string& a, const std::string& b, int bound) {
        return dump(equivalence_to_json(are_equivalent(load(a), load(b), bound)));
      },
      py::arg("a"), py::arg("b"), py::arg("conjugacy_bound") = 64);
  m.def("classify_tame", [](const std::string& text) { return dump(tame_verdict_to_json(classify_tame(load(text)))); });
  m.def("canonical_key", [](const std::string& text) { return canonical_key(load(text)); });

  py::class_<PySession>(m, "Session")
      .def(py::init<const std::string&, bool>(), py::arg("quiver"), py::arg("lenient") = false)
      .def("request", &PySession::request, py::arg("method"), py::arg("path"), py::arg("body") = "")
      .def("current", &PySession::current);
}
