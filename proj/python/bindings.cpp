#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "carsym/checker.hpp"
#include "carsym/fock.hpp"
#include "carsym/folner.hpp"
#include "carsym/json_io.hpp"
#include "carsym/parallel.hpp"
#include "carsym/parse.hpp"

namespace py = pybind11;
using namespace carsym;

namespace {

Dyadic dyadic_from_object(const py::object& obj) {
  if (py::isinstance<Dyadic>(obj)) return obj.cast<Dyadic>();
  if (py::isinstance<py::int_>(obj)) return Dyadic(obj.cast<std::int64_t>());
  if (py::isinstance<py::str>(obj)) return Dyadic::parse(obj.cast<std::string>());
  throw DomainError("expected an int, a 'p/q' string or a Dyadic");
}

CheckOptions options_from_kwargs(int degree_cap, int window, std::optional<double> tolerance,
                                 std::uint64_t seed, int count, int threads) {
  CheckOptions o;
  o.degree_cap = degree_cap;
  o.window = centered_window(window);
  o.tolerance = tolerance;
  o.seed = seed;
  o.random_count = count;
  o.threads = threads > 0 ? threads : default_thread_count();
  return o;
}

py::object json_to_py(const nlohmann::ordered_json& j) {
  py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "symbolic CAR algebra engine with symmetry batteries";

  py::register_exception<DomainError>(m, "DomainError");
  py::register_exception<PreconditionError>(m, "PreconditionError");
  py::register_exception<ParseError>(m, "InvalidExpression");

  py::class_<Dyadic>(m, "Dyadic")
      .def(py::init([](const py::object& obj) { return dyadic_from_object(obj); }))
      .def_property_readonly("num", &Dyadic::num)
      .def_property_readonly("exp", &Dyadic::exp)
      .def("is_integer", &Dyadic::is_integer)
      .def("__float__", &Dyadic::to_double)
      .def("__str__", &Dyadic::str)
      .def("__repr__", [](const Dyadic& d) { return "Dyadic('" + d.str() + "')"; })
      .def("__eq__", [](const Dyadic& a, const py::object& b) { return a == dyadic_from_object(b); })
      .def("__lt__", [](const Dyadic& a, const py::object& b) { return a < dyadic_from_object(b); })
      .def("__hash__", [](const Dyadic& d) { return py::hash(py::make_tuple(d.num(), d.exp())); });

  py::class_<CarPolynomial>(m, "Polynomial")
      .def(py::init<>())
      .def(py::init([](Complex c) { return CarPolynomial(c); }))
      .def("__add__", [](const CarPolynomial& a, const CarPolynomial& b) { return a + b; })
      .def("__sub__", [](const CarPolynomial& a, const CarPolynomial& b) { return a - b; })
      .def("__mul__", [](const CarPolynomial& a, const CarPolynomial& b) { return a * b; })
      .def("__rmul__", [](const CarPolynomial& p, Complex c) { return c * p; })
      .def("__mul__", [](const CarPolynomial& p, Complex c) { return p * c; })
      .def("__neg__", [](const CarPolynomial& p) { return -p; })
      .def("__eq__", [](const CarPolynomial& a, const CarPolynomial& b) { return a == b; })
      .def("adjoint", &CarPolynomial::adjoint)
      .def("parity", &CarPolynomial::parity)
      .def("even_odd", &CarPolynomial::even_odd)
      .def("degree", &CarPolynomial::degree)
      .def("term_count", &CarPolynomial::term_count)
      .def("is_zero", &CarPolynomial::is_zero)
      .def("support", [](const CarPolynomial& p) {
        std::vector<std::string> out;
        for (const Dyadic& d : p.support()) out.push_back(d.str());
        return out;
      })
      .def("almost_equal", &CarPolynomial::almost_equal, py::arg("other"), py::arg("tol") = 1e-12)
      .def("__str__", &CarPolynomial::str)
      .def("__repr__", [](const CarPolynomial& p) { return "Polynomial('" + p.str() + "')"; });

  m.def("parse", &parse_expression, py::arg("text"), "parse an expression into a normal-ordered polynomial");
  m.def("annihilator", [](const py::object& i) { return CarPolynomial::annihilator(dyadic_from_object(i)); });
  m.def("creator", [](const py::object& i) { return CarPolynomial::creator(dyadic_from_object(i)); });
  m.def("position", [](const py::object& i) { return CarPolynomial::position(dyadic_from_object(i)); });

  py::class_<SpreadingMap>(m, "SpreadingMap")
      .def(py::init<std::int64_t, std::vector<std::int64_t>>(), py::arg("shift"), py::arg("skipped"))
      .def_static("theta", &SpreadingMap::theta, py::arg("h"))
      .def_static("tau", &SpreadingMap::tau, py::arg("l") = 1)
      .def_property_readonly("shift", &SpreadingMap::shift)
      .def_property_readonly("skipped", &SpreadingMap::skipped)
      .def("__call__", [](const SpreadingMap& f, std::int64_t k) { return f(k); })
      .def("compose", [](const SpreadingMap& f, const SpreadingMap& g) { return compose(f, g); })
      .def("act", [](const SpreadingMap& f, const CarPolynomial& p) { return act(f, p); })
      .def("__eq__", [](const SpreadingMap& a, const SpreadingMap& b) { return a == b; })
      .def("to_json", [](const SpreadingMap& f) { return json_to_py(spreading_json(f)); })
      .def("__repr__", [](const SpreadingMap& f) { return spreading_json(f).dump(); });

  py::class_<FinitePermutation>(m, "Permutation")
      .def(py::init<std::map<std::int64_t, std::int64_t>>(), py::arg("moved"))
      .def_static("transposition", &FinitePermutation::transposition)
      .def("__call__", [](const FinitePermutation& f, std::int64_t k) { return f(k); })
      .def("inverse", &FinitePermutation::inverse)
      .def("compose", [](const FinitePermutation& f, const FinitePermutation& g) { return compose(f, g); })
      .def("act", [](const FinitePermutation& f, const CarPolynomial& p) { return act(f, p); });

  py::class_<PLDyadicMap>(m, "PLMap")
      .def_static("theta0_tilde", &PLDyadicMap::theta0_tilde)
      .def_static("dilated_theta0", &PLDyadicMap::dilated_theta0, py::arg("k"))
      .def_static("translation", [](const py::object& t) { return PLDyadicMap::translation(dyadic_from_object(t)); })
      .def("__call__", [](const PLDyadicMap& f, const py::object& d) { return f(dyadic_from_object(d)); })
      .def("inverse", &PLDyadicMap::inverse)
      .def("compose", [](const PLDyadicMap& f, const PLDyadicMap& g) { return compose(f, g); })
      .def("act", [](const PLDyadicMap& f, const CarPolynomial& p) { return act(f, p); })
      .def("is_identity", &PLDyadicMap::is_identity)
      .def("__eq__", [](const PLDyadicMap& a, const PLDyadicMap& b) { return a == b; })
      .def("to_json", [](const PLDyadicMap& f) { return json_to_py(pl_json(f)); });

  py::class_<OrthogonalWindowMatrix>(m, "Orthogonal")
      .def_static("givens", &OrthogonalWindowMatrix::givens, py::arg("window"), py::arg("i"), py::arg("j"),
                  py::arg("angle"))
      .def_static("sign_flip", &OrthogonalWindowMatrix::sign_flip, py::arg("window"), py::arg("i"))
      .def_static("swap", &OrthogonalWindowMatrix::swap, py::arg("window"), py::arg("i"), py::arg("j"))
      .def("__mul__", [](const OrthogonalWindowMatrix& a, const OrthogonalWindowMatrix& b) { return a * b; })
      .def("entry", &OrthogonalWindowMatrix::entry)
      .def("act", [](const OrthogonalWindowMatrix& o, const CarPolynomial& p) { return act(o, p); })
      .def("to_json", [](const OrthogonalWindowMatrix& o) { return json_to_py(orthogonal_json(o)); });

  m.def("rescale", &rescale, py::arg("n"), py::arg("p"));
  m.def("rescale_inverse", &rescale_inverse, py::arg("n"), py::arg("p"));

  py::class_<StateModel, StatePtr>(m, "State")
      .def("evaluate", [](const StateModel& s, const CarPolynomial& p) { return s.evaluate(p); })
      .def("descriptor", [](const StateModel& s) { return json_to_py(s.descriptor()); })
      .def("__repr__", [](const StateModel& s) { return s.descriptor().dump(); });

  m.def("state", [](const py::object& descriptor) {
    if (py::isinstance<py::str>(descriptor)) return state_from_descriptor(descriptor.cast<std::string>());
    py::module_ json = py::module_::import("json");
    std::string dumped = json.attr("dumps")(descriptor).cast<std::string>();
    return state_from_json(nlohmann::json::parse(dumped));
  });
  m.def("product_state", &product_state, py::arg("mu"));
  m.def("vacuum_state", &vacuum_state);
  m.def("pullback", &pullback, py::arg("base"), py::arg("n"));
  m.def("mixture", [](const std::vector<std::pair<double, StatePtr>>& parts) { return mixture(parts); });
  m.def("clustering_gap",
        [](const StatePtr& s, const CarPolynomial& x, std::int64_t k) { return clustering_gap(*s, x, k); });

  m.def("folner_count", [](int n) {
    py::module_ builtins = py::module_::import("builtins");
    return builtins.attr("int")(folner_count(n).str());
  });
  m.def("folner_subset_report", [](int n, int mm, bool distinct_maps, int threads) {
    return json_to_py(subset_report_json(subset_report(n, mm, distinct_maps,
                                                       threads > 0 ? threads : default_thread_count())));
  }, py::arg("n"), py::arg("m"), py::arg("distinct_maps") = false, py::arg("threads") = 0);
  m.def("ergodic_average", [](const StatePtr& s, const CarPolynomial& x, int n, int threads) {
    return ergodic_average(*s, x, n, threads > 0 ? threads : default_thread_count());
  }, py::arg("state"), py::arg("x"), py::arg("n"), py::arg("threads") = 0);
  m.def("ergodic_average_sampled",
        [](const StatePtr& s, const CarPolynomial& x, int n, std::int64_t count, std::uint64_t seed) {
          return ergodic_average_sampled(*s, x, n, count, seed);
        },
        py::arg("state"), py::arg("x"), py::arg("n"), py::arg("count"), py::arg("seed") = 0);
  m.def("sample_folner", [](int n, std::int64_t count, std::uint64_t seed) {
    return sample_folner(n, count, seed);
  }, py::arg("n"), py::arg("count"), py::arg("seed") = 0);

  m.def("oracle_product_expectation", [](double mu, const CarPolynomial& p) {
    std::vector<Dyadic> modes(p.support().begin(), p.support().end());
    ModeWindow w = ModeWindow::of(modes);
    return oracle_evaluate(product_density(mu, w), p, w);
  }, py::arg("mu"), py::arg("p"), "trace against the product density on the support window");
  m.def("car_relation_deviation",
        [](int modes) { return car_relation_deviation(ModeWindow::integers(0, modes - 1)); }, py::arg("modes"));

  m.def("check_symmetry",
        [](const StatePtr& s, const std::string& symmetry, int degree_cap, int window,
           std::optional<double> tolerance, std::uint64_t seed, int count, int threads) {
          CheckOptions opts = options_from_kwargs(degree_cap, window, tolerance, seed, count, threads);
          if (symmetry == "spreadable-even") return json_to_py(check_spreadable_implies_even(*s, opts).to_json());
          auto kind = symmetry_from_name(symmetry);
          if (!kind) throw DomainError("unknown symmetry '" + symmetry + "'");
          return json_to_py(check_symmetry(*s, *kind, opts).to_json());
        },
        py::arg("state"), py::arg("symmetry"), py::arg("degree_cap") = 4, py::arg("window") = 5,
        py::arg("tolerance") = std::nullopt, py::arg("seed") = 0, py::arg("count") = 50,
        py::arg("threads") = 0);
  m.def("check_extremality",
        [](const StatePtr& s, std::int64_t separation, int degree_cap, int window, int threads) {
          CheckOptions opts = options_from_kwargs(degree_cap, window, std::nullopt, 0, 0, threads);
          return json_to_py(check_extremality(*s, separation, opts).to_json());
        },
        py::arg("state"), py::arg("separation") = 5, py::arg("degree_cap") = 4, py::arg("window") = 5,
        py::arg("threads") = 0);
  m.def("check_dyadic_invariance",
        [](const StatePtr& s, unsigned level, int degree_cap, int window, int threads) {
          CheckOptions opts = options_from_kwargs(degree_cap, window, std::nullopt, 0, 0, threads);
          return json_to_py(check_dyadic_invariance(*s, level, opts).to_json());
        },
        py::arg("state"), py::arg("level") = 1, py::arg("degree_cap") = 4, py::arg("window") = 5,
        py::arg("threads") = 0);
}
