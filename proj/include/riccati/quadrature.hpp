#ifndef RICCATI_QUADRATURE_HPP
#define RICCATI_QUADRATURE_HPP

#include <functional>

#include "riccati/expr.hpp"

namespace riccati {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    int max_depth = 40;
};

/// Adaptive Simpson rule with Richardson extrapolation. Integrates from a to
/// b (either order); throws QuadratureError when max_depth is exceeded before
/// the local error estimate drops under the budget.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureConfig& cfg = {});

/// Same engine applied to a symbolic integrand.
double quadrature(const Expr& f, double a, double b, const QuadratureConfig& cfg = {});

/// Process-wide settings used when evaluating Integral nodes. Set once at
/// startup, before any expression evaluation; not synchronized against
/// concurrent eval calls.
void set_integral_quadrature(const QuadratureConfig& cfg);
QuadratureConfig integral_quadrature();

}  // namespace riccati

#endif
