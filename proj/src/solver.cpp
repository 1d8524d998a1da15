#include "riccati/solver.hpp"

#include <cmath>

namespace riccati {
namespace {

constexpr double kBlowupGuard = 1e12;

}  // namespace

Trajectory rk4_integrate(const RiccatiEquation& eq, double x0, double t0, double t1, int steps) {
    if (!(t0 < t1)) throw std::invalid_argument("rk4_integrate: t0 must be < t1");
    if (steps < 1) throw std::invalid_argument("rk4_integrate: steps must be >= 1");
    const double h = (t1 - t0) / steps;

    Trajectory traj;
    traj.step = h;
    traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
    traj.samples.push_back({t0, ExtendedReal::finite(x0)});

    double x = x0;
    for (int i = 0; i < steps; ++i) {
        const double t = t0 + i * h;
        const double k1 = rhs_at(eq, t, x);
        const double k2 = rhs_at(eq, t + 0.5 * h, x + 0.5 * h * k1);
        const double k3 = rhs_at(eq, t + 0.5 * h, x + 0.5 * h * k2);
        const double k4 = rhs_at(eq, t + h, x + h * k3);
        x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double tn = (i + 1 == steps) ? t1 : t0 + (i + 1) * h;
        if (!std::isfinite(x) || std::fabs(x) > kBlowupGuard) {
            traj.samples.push_back({tn, ExtendedReal::infinity()});
            traj.blowup_t = tn;
            break;
        }
        traj.samples.push_back({tn, ExtendedReal::finite(x)});
    }
    return traj;
}

Expr solve_linear(const Expr& a1, const Expr& a0, double x0, double t0) {
    const Expr big_i = antiderivative_from(simplify(a1), t0);
    const Expr inner = antiderivative_from(simplify(a0 * Expr::exp(-big_i)), t0);
    return simplify(Expr::exp(big_i) * (Expr::constant(x0) + inner));
}

Expr solve_one_known(const RiccatiEquation& eq, const Expr& x1, double x0, double t0) {
    const double x1_0 = x1.eval(t0);
    if (x1_0 == x0)
        throw DomainError("solve_one_known: x0 equals x1(t0); the solution is x1 itself");
    const double u0 = 1.0 / (x1_0 - x0);
    const Expr g = simplify(Expr::constant(2) * x1 * eq.a2 + eq.a1);
    const Expr big_g = antiderivative_from(g, t0);
    const Expr inner = antiderivative_from(simplify(eq.a2 * Expr::exp(big_g)), t0);
    const Expr u = Expr::exp(-big_g) * (Expr::constant(u0) + inner);
    return simplify(x1 - Expr::constant(1) / u);
}

Expr solve_two_known(const RiccatiEquation& eq, const Expr& x1, const Expr& x2, double x0,
                     double t0) {
    const double x1_0 = x1.eval(t0);
    const double x2_0 = x2.eval(t0);
    if (x0 == x1_0) return x1;
    if (x0 == x2_0) return x2;
    const double xbar0 = (x0 - x1_0) / (x0 - x2_0);
    const Expr rate = simplify(eq.a2 * (x1 - x2));
    const Expr xbar = Expr::constant(xbar0) * Expr::exp(antiderivative_from(rate, t0));
    return simplify((x1 - x2 * xbar) / (Expr::constant(1) - xbar));
}

Expr solve_three_known(const RiccatiEquation& eq, const Expr& x1, const Expr& x2, const Expr& x3,
                       double x0, double t0) {
    (void)eq;
    const double k = cross_ratio(x0, x1.eval(t0), x2.eval(t0), x3.eval(t0));
    const Expr kk = Expr::constant(k);
    const Expr num = kk * x1 * (x3 - x2) + x2 * (x1 - x3);
    const Expr den = kk * (x3 - x2) + (x1 - x3);
    return simplify(num / den);
}

double superposition_eval(double x1, double x2, double x3, double k) {
    const double den = k * (x3 - x2) + (x1 - x3);
    if (den == 0.0) throw DomainError("superposition_eval: the solution is at infinity here");
    return (k * x1 * (x3 - x2) + x2 * (x1 - x3)) / den;
}

double superposition_eval_at_infinity(double x1, double x2, double x3) {
    (void)x2;
    (void)x3;
    return x1;
}

double cross_ratio(double x, double x1, double x2, double x3) {
    const double den = (x - x1) * (x2 - x3);
    if (den == 0.0)
        throw DomainError("cross_ratio: coincident solutions (zero denominator)");
    return (x - x2) * (x1 - x3) / den;
}

Expr pullback_solution(const GroupElement& a, const Expr& y) {
    return mobius_of_expr(inverse(a), y);
}

}  // namespace riccati
