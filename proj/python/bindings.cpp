#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specialprimes/config.hpp"
#include "specialprimes/error.hpp"
#include "specialprimes/fmodules.hpp"
#include "specialprimes/kz.hpp"
#include "specialprimes/problem.hpp"

namespace py = pybind11;
using namespace sprimes;

namespace {

PolyMatrix to_matrix(const RingPtr& R, const py::object& obj) {
  if (py::isinstance<PolyMatrix>(obj)) return obj.cast<PolyMatrix>();
  if (py::isinstance<py::str>(obj)) return parse_matrix(R, obj.cast<std::string>());
  std::vector<std::vector<Poly>> rows;
  for (const auto& row : obj) {
    rows.emplace_back();
    for (const auto& entry : row) {
      if (py::isinstance<Poly>(entry)) {
        rows.back().push_back(entry.cast<Poly>());
      } else {
        rows.back().push_back(parse_poly(R, py::str(entry).cast<std::string>()));
      }
    }
  }
  return PolyMatrix::from_rows(R, rows);
}

Poly to_poly(const RingPtr& R, const py::object& obj) {
  if (py::isinstance<Poly>(obj)) return obj.cast<Poly>();
  return parse_poly(R, py::str(obj).cast<std::string>());
}

// Python-side ring; the library shares rings as pointers to const.
struct RingHandle {
  RingPtr ring;
};

std::vector<Ideal> ideals_of(const std::vector<PrimeRecord>& v) {
  std::vector<Ideal> out;
  for (const auto& r : v) out.push_back(r.ideal);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Frobenius-compatible and special primes over F_p[x_1..x_n]";

  auto math_error = py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ContextError>(m, "ContextError", PyExc_ValueError);
  (void)math_error;

  py::class_<RingHandle>(m, "Ring")
      .def(py::init([](std::uint32_t p, std::vector<std::string> vars, const std::string& order) {
             if (!is_prime_number(p)) throw MathError("p must be prime");
             return RingHandle{Ring::make(p, std::move(vars), order)};
           }),
           py::arg("p"), py::arg("vars"), py::arg("order") = "grevlex")
      .def_static("parse", [](const std::string& s) { return RingHandle{parse_ring_spec(s)}; },
                  "Ring from \"p=2 vars=x,y order=grevlex\".")
      .def_property_readonly("characteristic", [](const RingHandle& h) { return h.ring->characteristic(); })
      .def_property_readonly("vars", [](const RingHandle& h) { return h.ring->names(); })
      .def("__str__", [](const RingHandle& h) { return h.ring->ring_line(); })
      .def("__repr__", [](const RingHandle& h) { return h.ring->ring_line(); })
      .def("poly", [](const RingHandle& h, const std::string& s) { return parse_poly(h.ring, s); })
      .def("ideal", [](const RingHandle& h, const std::vector<py::object>& gens) {
        std::vector<Poly> g;
        for (const auto& o : gens) g.push_back(to_poly(h.ring, o));
        return make_ideal(h.ring, g);
      })
      .def("matrix", [](const RingHandle& h, const py::object& rows) { return to_matrix(h.ring, rows); });

  py::class_<Poly>(m, "Poly")
      .def("__str__", &Poly::to_string)
      .def("__repr__", [](const Poly& f) { return "Poly(" + f.to_string() + ")"; })
      .def("__add__", [](const Poly& a, const Poly& b) { return a + b; })
      .def("__sub__", [](const Poly& a, const Poly& b) { return a - b; })
      .def("__mul__", [](const Poly& a, const Poly& b) { return a * b; })
      .def("__pow__", [](const Poly& a, std::uint64_t k) { return a.pow(k); })
      .def("__eq__", [](const Poly& a, const Poly& b) { return a == b; })
      .def("frobenius", &Poly::frobenius, py::arg("e") = 1)
      .def("is_zero", &Poly::is_zero);

  py::class_<Submodule>(m, "Submodule")
      .def("__str__", &Submodule::to_string)
      .def("__repr__", [](const Submodule& s) { return "Submodule" + s.to_string(); })
      .def("__eq__", [](const Submodule& a, const Submodule& b) { return a == b; })
      .def("__add__", [](const Submodule& a, const Submodule& b) { return a + b; })
      .def("__contains__", [](const Submodule& s, const Poly& f) {
        if (s.rank() != 1) throw ContextError("membership of a polynomial needs an ideal");
        return ideal_contains(s, f);
      })
      .def("contains", [](const Submodule& s, const Submodule& o) { return s.contains(o); })
      .def_property_readonly("rank", &Submodule::rank)
      .def("is_zero", &Submodule::is_zero)
      .def("is_full", &Submodule::is_full)
      .def("gb", [](const Submodule& s) {
        std::vector<std::string> out;
        for (const auto& v : s.gb()) out.push_back(s.rank() == 1 ? v[0].to_string() : vector_to_string(v));
        return out;
      }, "Reduced Groebner basis, printed.");

  py::class_<PolyMatrix>(m, "PolyMatrix")
      .def("__str__", &PolyMatrix::to_string)
      .def("__repr__", [](const PolyMatrix& M) { return "PolyMatrix(" + M.to_string() + ")"; })
      .def("__eq__", [](const PolyMatrix& a, const PolyMatrix& b) { return a == b; })
      .def("__mul__", [](const PolyMatrix& a, const PolyMatrix& b) { return a * b; })
      .def_property_readonly("shape", [](const PolyMatrix& M) { return py::make_tuple(M.rows(), M.cols()); })
      .def("image", [](const PolyMatrix& M) { return image(M); });

  m.def("minimal_primes", [](const Ideal& I) { return ideals_of(minimal_primes(I)); });
  m.def("ie_operation", &ie_operation, py::arg("K"), py::arg("e") = 1);
  m.def("frobenius_power", &frobenius_power, py::arg("K"), py::arg("e") = 1);
  m.def("star_closure", [](const Submodule& V, const py::object& U, unsigned e) -> Submodule {
    if (py::isinstance<Poly>(U)) return star_closure(V, U.cast<Poly>(), e);
    return star_closure(V, to_matrix(V.ring(), U), e);
  }, py::arg("V"), py::arg("U"), py::arg("e") = 1);
  m.def("stable_kernel", [](const PolyMatrix& U) { return stable_kernel(U); });
  m.def("fedder_colon", &fedder_colon, py::arg("I"), py::arg("e") = 1);
  m.def("is_compatible", &is_compatible, py::arg("P"), py::arg("u"), py::arg("e") = 1);
  m.def("is_u_special", &is_u_special, py::arg("P"), py::arg("U"));
  m.def("compatible_primes", [](const Poly& u, unsigned e) {
    return ideals_of(ks_run({u, e}).primes);
  }, py::arg("u"), py::arg("e") = 1, "Primes P with uP in P^[p^e] that avoid the non-F-pure locus.");
  m.def("special_primes", [](const PolyMatrix& U) { return ideals_of(kz_run({U}).primes); }, py::arg("U"));
  m.def("corank_positive_primes", [](const PolyMatrix& A, const PolyMatrix& U) {
    return ideals_of(corank_positive_primes(validate_root(A, U)));
  }, py::arg("A"), py::arg("U"));

  m.def("set_thread_count", &set_thread_count);
  m.def("thread_count", &thread_count);

  m.def("run", [](const std::string& problem_text, const std::string& command,
                  std::map<std::string, std::string> args, unsigned e, bool trace) {
    CommandOutcome res;
    try {
      res = run_command(parse_problem(problem_text), CommandRequest{command, std::move(args), e, trace});
    } catch (const ParseError& err) {
      res.exit_code = 2;
      res.err = std::string("parse error: ") + err.what() + "\n";
    }
    return py::make_tuple(res.exit_code, res.out, res.err);
  }, py::arg("problem"), py::arg("command"), py::arg("args") = std::map<std::string, std::string>{},
     py::arg("e") = 1, py::arg("trace") = false,
     "Runs a CLI command on problem-file text; returns (exit_code, stdout, stderr).");
}
