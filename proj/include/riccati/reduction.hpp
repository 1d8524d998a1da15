#ifndef RICCATI_REDUCTION_HPP
#define RICCATI_REDUCTION_HPP

#include <optional>
#include <utility>
#include <vector>

#include "riccati/equation.hpp"

namespace riccati {

/// One, two or three particular solutions, residual-verified against an
/// equation at construction. With three solutions the ordering
/// x1 > x2 > x3 must hold at every domain sample, and pairwise differences
/// must stay away from zero.
struct KnownSolutions {
    Expr x1;
    std::optional<Expr> x2;
    std::optional<Expr> x3;
    std::vector<double> verified_residuals;

    static KnownSolutions verify(const RiccatiEquation& eq, const std::vector<Expr>& xs,
                                 double tol = 1e-7);
};

/// [[1, -x1], [0, 1]]: the shift x' = x - x1. Transforming by it kills a0'
/// and leaves a2' = a2, a1' = 2 x1 a2 + a1.
GroupElement shift_by_solution(const Expr& x1, const Interval& domain);

/// [[1, 0], [-1/x1, 1]]: x~' = x1 x / (x1 - x). Kills a2' directly, giving
/// the linear equation with a1~' = 2 a0/x1 + a1 and a0~' = a0. Requires x1
/// nonvanishing on the domain samples.
GroupElement coshift_by_solution(const Expr& x1, const Interval& domain);

enum class TwoSolutionVariant {
    Composed,     // [[1, -x1], [1/(x1-x2), -x2/(x1-x2)]]
    Standard,     // (x1-x2)^(-1/2) [[1, -x1], [1, -x2]]   (requires x1 > x2)
    Alternative,  // [[x1/(x1-x2), -x1 x2/(x1-x2)], [-1/x1, 1]] (requires x1 != 0)
};

/// Element built from two known solutions; the transformed equation has
/// both quadratic and constant coefficients identically zero.
GroupElement two_solution_element(const Expr& x1, const Expr& x2, TwoSolutionVariant variant,
                                  const Interval& domain);

/// Element built from three ordered solutions (x1 > x2 > x3 on samples);
/// transforming by it annihilates all three coefficients, and its Moebius
/// map realizes x''' = (x - x1)(x2 - x3) / ((x - x2)(x1 - x3)).
GroupElement three_solution_element(const Expr& x1, const Expr& x2, const Expr& x3,
                                    const Interval& domain);

/// diag(alpha, 1/alpha) with alpha = exp(-1/2 * integral of a1 from t_lo);
/// the transformed equation has a1' = 0, a2' = a2 e^phi, a0' = a0 e^-phi.
std::pair<GroupElement, RiccatiEquation> scale_normalize_a1(const RiccatiEquation& eq);

/// [[1, a1/(2 a2)], [0, 1]]; the transformed equation has a1' = 0,
/// a2' = a2 and a0' = a0 + beta' - a1^2/(4 a2). Requires a2 nonvanishing on
/// samples.
std::pair<GroupElement, RiccatiEquation> shift_normalize_a1(const RiccatiEquation& eq);

/// X(t) = 2 x1 a2 + a1: the linear coefficient produced by
/// shift_by_solution.
Expr murphy_X(const RiccatiEquation& eq, const Expr& x1);

}  // namespace riccati

#endif
