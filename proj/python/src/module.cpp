#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "keypoly/commands.hpp"
#include "keypoly/error.hpp"
#include "keypoly/parse.hpp"

namespace py = pybind11;
using namespace keypoly;

namespace {

KeyChain chain_from_text(const std::string& text) { return chain_from_json(Json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Key polynomial chains of valuations on K[x]";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() { return py::exception<Error>(m, "KeypolyError"); });
  py::register_exception_translator([](std::exception_ptr p) {
    auto raise = [](const char* kind, const char* what) {
      py::object type = error_type.get_stored();
      py::object exc = type(what);
      exc.attr("kind") = kind;
      PyErr_SetObject(type.ptr(), exc.ptr());
    };
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      raise(error_name(e.kind()), e.what());
    } catch (const Json::exception& e) {
      raise("InvalidInput", e.what());
    }
  });

  py::class_<FieldSpec>(m, "Field")
      .def_static("rationals", &FieldSpec::rationals, py::arg("p"))
      .def_static("fp_t", &FieldSpec::fp_t, py::arg("p"))
      .def_static("q_t", &FieldSpec::q_t)
      .def_static("fp_uv", &FieldSpec::fp_uv, py::arg("p"))
      .def_static("from_json", [](const std::string& text) { return field_from_json(Json::parse(text)); })
      .def("to_json", [](const FieldSpec& s) { return to_json(s).dump(); })
      .def("__repr__", &FieldSpec::describe);

  py::class_<Value>(m, "Value")
      .def_static("infinity", &Value::infinity)
      .def_static("from_json", [](const std::string& text) { return value_from_json(Json::parse(text)); })
      .def("is_infinite", &Value::is_infinite)
      .def("__float__", &Value::approx)
      .def("__eq__", [](const Value& a, const Value& b) { return a == b; })
      .def("__lt__", [](const Value& a, const Value& b) { return a < b; })
      .def("__le__", [](const Value& a, const Value& b) { return a <= b; })
      .def("__add__", [](const Value& a, const Value& b) { return a + b; })
      .def("__str__", &Value::str)
      .def("__repr__", [](const Value& v) { return "Value(" + v.str() + ")"; });

  py::class_<Poly>(m, "Poly")
      .def_static("parse", &parse_polynomial, py::arg("field"), py::arg("text"))
      .def("degree", &Poly::degree)
      .def("coeffs", [](const Poly& f) {
        std::vector<std::string> out;
        for (const auto& c : f.coeffs()) out.push_back(c.str());
        return out;
      })
      .def("__add__", [](const Poly& a, const Poly& b) { return a + b; })
      .def("__sub__", [](const Poly& a, const Poly& b) { return a - b; })
      .def("__mul__", [](const Poly& a, const Poly& b) { return a * b; })
      .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
      .def("__str__", &Poly::str)
      .def("__repr__", [](const Poly& f) { return "Poly(" + f.str() + ")"; });

  py::class_<KeyChain>(m, "KeyChain")
      .def_static("from_json", &chain_from_text, py::arg("text"))
      .def("to_json", [](const KeyChain& c) { return to_json(c).dump(); })
      .def("__len__", &KeyChain::length)
      .def("field", &KeyChain::spec)
      .def("key", [](const KeyChain& c, int i) { return c.level(i).Q; })
      .def("beta", [](const KeyChain& c, int i) { return c.level(i).beta; })
      .def("alpha", [](const KeyChain& c, int i) { return c.level(i).alpha; })
      .def("truncation", &KeyChain::truncation, py::arg("poly"), py::arg("level"))
      .def("expand", [](const KeyChain& c, const Poly& h, int i) { return c.expand(h, i).coeffs; }, py::arg("poly"), py::arg("level"));

  m.def(
      "run_command",
      [](const std::string& name, const std::string& request) {
        Json req = Json::parse(request);
        CommandOutput out;
        {
          py::gil_scoped_release release;
          out = keypoly::run_command(name, req);
        }
        return py::make_tuple(dump(out.report), out.svg, out.exit_code);
      },
      py::arg("name"), py::arg("request"), "Runs a CLI command on a JSON request; returns (json, svg, exit_code).");
}
