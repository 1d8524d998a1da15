#ifndef RICCATI_SOLVER_HPP
#define RICCATI_SOLVER_HPP

#include <optional>
#include <vector>

#include "riccati/equation.hpp"
#include "riccati/quadrature.hpp"

namespace riccati {

struct TrajectorySample {
    double t;
    ExtendedReal x;
};

/// Fixed-step numerical solution. Strictly increasing t; x is finite except
/// possibly for a final infinite sample recorded when the blow-up guard
/// (|x| > 1e12) fires, after which integration stops.
struct Trajectory {
    std::vector<TrajectorySample> samples;
    double step = 0.0;
    std::optional<double> blowup_t;
};

/// Classical fourth-order Runge-Kutta with fixed step, blow-up guard at
/// |x| > 1e12. Serves as the independent oracle for every closed form.
Trajectory rk4_integrate(const RiccatiEquation& eq, double x0, double t0, double t1, int steps);

/// Solution of dx/dt = a1 x + a0 with x(t0) = x0, built from two running
/// integrals: x = e^I (x0 + integral of a0 e^-I), I = integral of a1.
Expr solve_linear(const Expr& a1, const Expr& a0, double x0, double t0);

/// Two-quadrature solution from one known solution x1:
/// x = x1 - 1/u with u = e^-G (u0 + integral of a2 e^G), G the running
/// integral of 2 x1 a2 + a1, and u0 = 1/(x1(t0) - x0).
/// Throws when x0 equals x1(t0); the caller should use x1 itself then.
Expr solve_one_known(const RiccatiEquation& eq, const Expr& x1, double x0, double t0);

/// One-quadrature solution from two known solutions: the ratio variable
/// xbar = (x - x1)/(x - x2) evolves as xbar0 e^K with K the running integral
/// of a2 (x1 - x2); returns the Moebius inverse (x1 - x2 xbar)/(1 - xbar).
/// Returns x1 or x2 directly when x0 matches them at t0.
Expr solve_two_known(const RiccatiEquation& eq, const Expr& x1, const Expr& x2, double x0,
                     double t0);

/// Quadrature-free solution from three known solutions with the constant
/// k fixed by the initial condition through cross_ratio.
Expr solve_three_known(const RiccatiEquation& eq, const Expr& x1, const Expr& x2, const Expr& x3,
                       double x0, double t0);

/// Superposition function
///   x = (k x1 (x3 - x2) + x2 (x1 - x3)) / (k (x3 - x2) + (x1 - x3)),
/// so k = 0 gives x2 and k = 1 gives x3. Throws DomainError when the
/// denominator vanishes (the solution passes through infinity).
double superposition_eval(double x1, double x2, double x3, double k);

/// The k -> infinity limit of the superposition function, which is x1.
double superposition_eval_at_infinity(double x1, double x2, double x3);

/// Constant of a solution through x: the exact inverse of
/// superposition_eval in its k argument,
///   k = ((x - x2)(x1 - x3)) / ((x - x1)(x2 - x3)).
/// Throws DomainError on coincident arguments (zero denominator).
double cross_ratio(double x, double x1, double x2, double x3);

/// Symbolic Moebius image of y under the inverse of a:
/// (delta y - beta) / (-gamma y + alpha). Recovers the original unknown
/// after solving a transformed equation.
Expr pullback_solution(const GroupElement& a, const Expr& y);

}  // namespace riccati

#endif
