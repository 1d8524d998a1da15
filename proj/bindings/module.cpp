#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "riccati/equation.hpp"
#include "riccati/formats.hpp"
#include "riccati/reduction.hpp"
#include "riccati/solver.hpp"

namespace py = pybind11;
using namespace riccati;

namespace {

Expr to_expr(const py::object& obj) {
    if (py::isinstance<Expr>(obj)) return obj.cast<Expr>();
    if (py::isinstance<py::str>(obj)) return parse_expr(obj.cast<std::string>());
    if (py::isinstance<py::int_>(obj) || py::isinstance<py::float_>(obj))
        return Expr::constant(obj.cast<double>());
    throw py::type_error("expected an Expr, a string, or a number");
}

py::object extended_to_py(const ExtendedReal& x) {
    if (x.is_infinite()) return py::float_(std::numeric_limits<double>::infinity());
    return py::float_(x.value());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Riccati equations under the SL(2,R) gauge action: criteria, "
              "reductions, quadrature solvers and the superposition rule.";

    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<QuadratureError>(m, "QuadratureError");
    py::register_exception<ParseError>(m, "ExprParseError");

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double, int>(), py::arg("t_lo"), py::arg("t_hi"),
             py::arg("samples") = 201)
        .def_readonly("t_lo", &Interval::t_lo)
        .def_readonly("t_hi", &Interval::t_hi)
        .def_readonly("samples", &Interval::samples)
        .def("grid", &Interval::grid);

    py::class_<Expr>(m, "Expr")
        .def(py::init([](const std::string& text) { return parse_expr(text); }), py::arg("text"))
        .def("__call__", &Expr::eval, py::arg("t"))
        .def("eval", &Expr::eval, py::arg("t"))
        .def("derivative", [](const Expr& e) { return differentiate(e); })
        .def("simplified", [](const Expr& e) { return simplify(e); })
        .def("antiderivative", [](const Expr& e, double t0) { return antiderivative_from(e, t0); },
             py::arg("t0") = 0.0)
        .def("__str__", &Expr::str)
        .def("__repr__", [](const Expr& e) { return "Expr(\"" + e.str() + "\")"; })
        .def("__add__", [](const Expr& a, const py::object& b) { return a + to_expr(b); })
        .def("__sub__", [](const Expr& a, const py::object& b) { return a - to_expr(b); })
        .def("__mul__", [](const Expr& a, const py::object& b) { return a * to_expr(b); })
        .def("__truediv__", [](const Expr& a, const py::object& b) { return a / to_expr(b); })
        .def("__neg__", [](const Expr& a) { return -a; });

    m.def("parse_expr", [](const std::string& s) { return parse_expr(s); });
    m.def("quadrature",
          [](const py::object& f, double a, double b, double abs_tol, int max_depth) {
              return quadrature(to_expr(f), a, b, QuadratureConfig{abs_tol, max_depth});
          },
          py::arg("f"), py::arg("a"), py::arg("b"), py::arg("abs_tol") = 1e-10,
          py::arg("max_depth") = 40);

    py::class_<Sl2Vector>(m, "Sl2Vector")
        .def(py::init<double, double, double>(), py::arg("c2"), py::arg("c1"), py::arg("c0"))
        .def_readwrite("c2", &Sl2Vector::c2)
        .def_readwrite("c1", &Sl2Vector::c1)
        .def_readwrite("c0", &Sl2Vector::c0)
        .def("__repr__", [](const Sl2Vector& v) {
            return "Sl2Vector(" + format_double(v.c2) + ", " + format_double(v.c1) + ", " +
                   format_double(v.c0) + ")";
        });

    py::class_<Mat2>(m, "Mat2")
        .def(py::init<double, double, double, double>(), py::arg("a"), py::arg("b"), py::arg("c"),
             py::arg("d"))
        .def_readwrite("a", &Mat2::a)
        .def_readwrite("b", &Mat2::b)
        .def_readwrite("c", &Mat2::c)
        .def_readwrite("d", &Mat2::d)
        .def("det", &Mat2::det)
        .def("__matmul__", [](const Mat2& x, const Mat2& y) { return x * y; });

    py::class_<GroupElement>(m, "GroupElement")
        .def(py::init([](const py::object& a, const py::object& b, const py::object& c,
                         const py::object& d, const Interval& dom) {
                 return GroupElement(to_expr(a), to_expr(b), to_expr(c), to_expr(d), dom);
             }),
             py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("delta"),
             py::arg("domain"))
        .def_static("identity", &GroupElement::identity, py::arg("domain"))
        .def_static("from_constant", &GroupElement::constant, py::arg("m"), py::arg("domain"))
        .def_static("from_unnormalized",
                    [](const py::object& a, const py::object& b, const py::object& c,
                       const py::object& d, const Interval& dom) {
                        return GroupElement::from_unnormalized(to_expr(a), to_expr(b), to_expr(c),
                                                               to_expr(d), dom);
                    })
        .def_readonly("alpha", &GroupElement::alpha)
        .def_readonly("beta", &GroupElement::beta)
        .def_readonly("gamma", &GroupElement::gamma)
        .def_readonly("delta", &GroupElement::delta)
        .def_readonly("domain", &GroupElement::domain)
        .def("at", [](const GroupElement& g, double t) {
            const Mat2 v = g.at(t);
            return py::make_tuple(v.a, v.b, v.c, v.d);
        });

    m.def("compose", &compose);
    m.def("inverse", &inverse);
    m.def("check_unimodular", &check_unimodular, py::arg("a"), py::arg("tol") = 1e-9);
    m.def("mobius_apply", [](const GroupElement& a, double x, double t) {
        const ExtendedReal in = std::isinf(x) ? ExtendedReal::infinity() : ExtendedReal::finite(x);
        return extended_to_py(mobius_apply(a, in, t));
    });
    m.def("mobius_of_expr",
          [](const GroupElement& a, const py::object& y) { return mobius_of_expr(a, to_expr(y)); });
    m.def("cocycle_theta", &cocycle_theta);
    m.def("adjoint_matrix_at", [](const GroupElement& a, double t) {
        const Mat3 v = adjoint_matrix_at(a, t);
        return std::vector<std::vector<double>>{{v[0][0], v[0][1], v[0][2]},
                                                {v[1][0], v[1][1], v[1][2]},
                                                {v[2][0], v[2][1], v[2][2]}};
    });
    m.def("sl2_bracket", &sl2_bracket);

    py::class_<RiccatiEquation>(m, "RiccatiEquation")
        .def(py::init([](const py::object& a0, const py::object& a1, const py::object& a2,
                         const Interval& dom) {
                 return RiccatiEquation(to_expr(a0), to_expr(a1), to_expr(a2), dom);
             }),
             py::arg("a0"), py::arg("a1"), py::arg("a2"), py::arg("domain"))
        .def_readonly("a0", &RiccatiEquation::a0)
        .def_readonly("a1", &RiccatiEquation::a1)
        .def_readonly("a2", &RiccatiEquation::a2)
        .def_readonly("domain", &RiccatiEquation::domain);

    m.def("rhs_at", &rhs_at);
    m.def("transform", &transform);
    m.def("transform_constant", &transform_constant);
    m.def("casimir", &casimir);
    m.def("constant_solutions",
          [](const Sl2Vector& v) { return constant_solutions(ConstRiccati{v}); });
    m.def("criterion_sum", &criterion_sum, py::arg("eq"), py::arg("tol") = 1e-9);
    m.def("criterion_constant_ratio", &criterion_constant_ratio, py::arg("eq"), py::arg("c1"),
          py::arg("c2"), py::arg("tol") = 1e-9);
    m.def("criterion_strelchenya",
          [](const RiccatiEquation& eq, const py::object& alpha, const py::object& beta,
             double tol) { return criterion_strelchenya(eq, to_expr(alpha), to_expr(beta), tol); },
          py::arg("eq"), py::arg("alpha"), py::arg("beta"), py::arg("tol") = 1e-9);
    m.def("residual_max",
          [](const RiccatiEquation& eq, const py::object& x) { return residual_max(eq, to_expr(x)); });
    m.def("guess_particular_solution",
          [](const RiccatiEquation& eq, double tol) -> py::object {
              const auto got = guess_particular_solution(eq, tol);
              if (!got) return py::none();
              return py::cast(*got);
          },
          py::arg("eq"), py::arg("tol") = 1e-9);

    m.def("shift_by_solution",
          [](const py::object& x1, const Interval& dom) { return shift_by_solution(to_expr(x1), dom); });
    m.def("coshift_by_solution", [](const py::object& x1, const Interval& dom) {
        return coshift_by_solution(to_expr(x1), dom);
    });

    py::enum_<TwoSolutionVariant>(m, "TwoSolutionVariant")
        .value("composed", TwoSolutionVariant::Composed)
        .value("standard", TwoSolutionVariant::Standard)
        .value("alternative", TwoSolutionVariant::Alternative);

    m.def("two_solution_element",
          [](const py::object& x1, const py::object& x2, TwoSolutionVariant v, const Interval& dom) {
              return two_solution_element(to_expr(x1), to_expr(x2), v, dom);
          });
    m.def("three_solution_element",
          [](const py::object& x1, const py::object& x2, const py::object& x3, const Interval& dom) {
              return three_solution_element(to_expr(x1), to_expr(x2), to_expr(x3), dom);
          });
    m.def("scale_normalize_a1", &scale_normalize_a1);
    m.def("shift_normalize_a1", &shift_normalize_a1);
    m.def("murphy_X",
          [](const RiccatiEquation& eq, const py::object& x1) { return murphy_X(eq, to_expr(x1)); });

    m.def("rk4_integrate",
          [](const RiccatiEquation& eq, double x0, double t0, double t1, int steps) {
              const Trajectory traj = rk4_integrate(eq, x0, t0, t1, steps);
              std::vector<std::pair<double, py::object>> out;
              out.reserve(traj.samples.size());
              for (const auto& s : traj.samples) out.emplace_back(s.t, extended_to_py(s.x));
              return out;
          },
          py::arg("eq"), py::arg("x0"), py::arg("t0"), py::arg("t1"), py::arg("steps") = 10000);
    m.def("solve_linear", [](const py::object& a1, const py::object& a0, double x0, double t0) {
        return solve_linear(to_expr(a1), to_expr(a0), x0, t0);
    });
    m.def("solve_one_known", [](const RiccatiEquation& eq, const py::object& x1, double x0,
                                double t0) { return solve_one_known(eq, to_expr(x1), x0, t0); });
    m.def("solve_two_known",
          [](const RiccatiEquation& eq, const py::object& x1, const py::object& x2, double x0,
             double t0) { return solve_two_known(eq, to_expr(x1), to_expr(x2), x0, t0); });
    m.def("solve_three_known",
          [](const RiccatiEquation& eq, const py::object& x1, const py::object& x2,
             const py::object& x3, double x0, double t0) {
              return solve_three_known(eq, to_expr(x1), to_expr(x2), to_expr(x3), x0, t0);
          });
    m.def("superposition_eval", &superposition_eval);
    m.def("superposition_eval_at_infinity", &superposition_eval_at_infinity);
    m.def("cross_ratio", &cross_ratio);
    m.def("pullback_solution",
          [](const GroupElement& a, const py::object& y) { return pullback_solution(a, to_expr(y)); });

#ifdef VERSION_INFO
#define RK_STR(x) #x
#define RK_XSTR(x) RK_STR(x)
    m.attr("__version__") = RK_XSTR(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
