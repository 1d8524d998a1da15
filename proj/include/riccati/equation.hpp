#ifndef RICCATI_EQUATION_HPP
#define RICCATI_EQUATION_HPP

#include <optional>
#include <vector>

#include "riccati/expr.hpp"
#include "riccati/interval.hpp"
#include "riccati/sl2.hpp"

namespace riccati {

/// dx/dt = a0(t) + a1(t) x + a2(t) x^2 on a declared interval.
struct RiccatiEquation {
    Expr a0, a1, a2;
    Interval domain;

    RiccatiEquation() = default;
    RiccatiEquation(Expr a0_, Expr a1_, Expr a2_, Interval dom)
        : a0(std::move(a0_)), a1(std::move(a1_)), a2(std::move(a2_)), domain(dom) {}
};

/// Constant-coefficient equation, stored as the (a2, a1, a0) column.
struct ConstRiccati {
    Sl2Vector coeffs;
};

double rhs_at(const RiccatiEquation& eq, double t, double x);

/// Gauge transform of the coefficients:
///   a2' = d^2 a2 - d c a1 + c^2 a0 + c d' - d c'
///   a1' = -2 b d a2 + (a d + b c) a1 - 2 a c a0 + d a' - a d' + b c' - c b'
///   a0' = b^2 a2 - a b a1 + a^2 a0 + a b' - b a'
/// with entry derivatives taken symbolically; the result is itself fully
/// symbolic so it can be transformed, solved and residual-tested again.
RiccatiEquation transform(const RiccatiEquation& eq, const GroupElement& a);

/// Adjoint action of a constant unimodular matrix (no cocycle term).
/// Requires |det m - 1| < 1e-12.
Sl2Vector transform_constant(const Sl2Vector& v, const Mat2& m);

/// Casimir function a1^2 - 4 a0 a2, constant on adjoint orbits.
double casimir(const Sl2Vector& v);

/// Real roots of a2 k^2 + a1 k + a0 = 0, ascending. Uses the
/// cancellation-free quadratic form. Empty when the discriminant is
/// negative or when a2 = a1 = 0 with a0 != 0; throws on the all-zero
/// (degenerate) equation.
std::vector<double> constant_solutions(const ConstRiccati& c);

/// Criterion a): |a0 + a1 + a2| <= tol at every domain sample
/// (then x = 1 is a particular solution).
bool criterion_sum(const RiccatiEquation& eq, double tol);

/// Criterion b): |c1^2 a2 + c1 c2 a1 + c2^2 a0| <= tol on samples
/// (then x = c1/c2 is a particular solution when c2 != 0).
bool criterion_constant_ratio(const RiccatiEquation& eq, double c1, double c2, double tol);

/// Criterion c): |alpha^2 a2 + alpha beta a1 + beta^2 a0 + alpha beta' -
/// beta alpha'| <= tol on samples (then x = alpha/beta is a particular
/// solution). alpha and beta must not vanish at any sample.
bool criterion_strelchenya(const RiccatiEquation& eq, const Expr& alpha, const Expr& beta,
                           double tol);

/// Grid maximum of |x'(t) - a0 - a1 x - a2 x^2| with x' symbolic.
double residual_max(const RiccatiEquation& eq, const Expr& x);

/// Searches for a particular solution: constant roots when all coefficients
/// are constant on the grid, then x = 1, then the candidates
/// x1 = (X - a1)/(2 a2) for X in {0, -a2'/a2, a1 - 2 sqrt(a0 a2),
/// a0 - a2 + a0'/a0 - a2'/a2}. First candidate with residual <= tol wins.
std::optional<Expr> guess_particular_solution(const RiccatiEquation& eq, double tol);

}  // namespace riccati

#endif
