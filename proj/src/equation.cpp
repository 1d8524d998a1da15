#include "riccati/equation.hpp"

#include <algorithm>
#include <cmath>

namespace riccati {
namespace {

double grid_max_abs(const Expr& e, const Interval& dom) {
    double m = 0.0;
    for (double t : dom.grid()) m = std::max(m, std::fabs(e.eval(t)));
    return m;
}

bool coefficient_constant_on_grid(const Expr& e, const Interval& dom, double* value) {
    if (e.is_constant()) {
        *value = e.constant_value();
        return true;
    }
    double lo = 0.0, hi = 0.0, scale = 0.0;
    bool first = true;
    for (double t : dom.grid()) {
        const double v = e.eval(t);
        scale = std::max(scale, std::fabs(v));
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (hi - lo <= 1e-12 * (1.0 + scale)) {
        *value = 0.5 * (lo + hi);
        return true;
    }
    return false;
}

}  // namespace

double rhs_at(const RiccatiEquation& eq, double t, double x) {
    return eq.a0.eval(t) + eq.a1.eval(t) * x + eq.a2.eval(t) * x * x;
}

RiccatiEquation transform(const RiccatiEquation& eq, const GroupElement& g) {
    const Interval dom = eq.domain.intersect(g.domain);
    const Expr& a = g.alpha;
    const Expr& b = g.beta;
    const Expr& c = g.gamma;
    const Expr& d = g.delta;
    const Expr da = differentiate(a);
    const Expr db = differentiate(b);
    const Expr dc = differentiate(c);
    const Expr dd = differentiate(d);

    const Expr a2p = d * d * eq.a2 - d * c * eq.a1 + c * c * eq.a0 + c * dd - d * dc;
    const Expr a1p = Expr::constant(-2) * b * d * eq.a2 + (a * d + b * c) * eq.a1 -
                     Expr::constant(2) * a * c * eq.a0 + d * da - a * dd + b * dc - c * db;
    const Expr a0p = b * b * eq.a2 - a * b * eq.a1 + a * a * eq.a0 + a * db - b * da;
    return RiccatiEquation(simplify(a0p), simplify(a1p), simplify(a2p), dom);
}

Sl2Vector transform_constant(const Sl2Vector& v, const Mat2& m) {
    if (!(std::fabs(m.det() - 1.0) < 1e-12))
        throw DomainError("transform_constant: matrix is not unimodular");
    return mat3_apply(adjoint_matrix(m), v);
}

double casimir(const Sl2Vector& v) { return v.c1 * v.c1 - 4.0 * v.c0 * v.c2; }

std::vector<double> constant_solutions(const ConstRiccati& c) {
    const double a = c.coeffs.c2;
    const double b = c.coeffs.c1;
    const double k = c.coeffs.c0;
    if (a == 0.0 && b == 0.0) {
        if (k == 0.0) throw DomainError("degenerate equation");
        return {};
    }
    if (a == 0.0) return {-k / b};
    const double disc = b * b - 4.0 * a * k;
    if (disc < 0.0) return {};
    if (disc == 0.0) return {-b / (2.0 * a)};
    const double sign_b = b >= 0.0 ? 1.0 : -1.0;
    const double q = -0.5 * (b + sign_b * std::sqrt(disc));
    double r1 = q / a;
    double r2 = (q != 0.0) ? k / q : -b / a - r1;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

bool criterion_sum(const RiccatiEquation& eq, double tol) {
    return grid_max_abs(simplify(eq.a0 + eq.a1 + eq.a2), eq.domain) <= tol;
}

bool criterion_constant_ratio(const RiccatiEquation& eq, double c1, double c2, double tol) {
    if (c1 == 0.0 && c2 == 0.0)
        throw std::invalid_argument("criterion_constant_ratio: both constants are zero");
    const Expr comb = Expr::constant(c1 * c1) * eq.a2 + Expr::constant(c1 * c2) * eq.a1 +
                      Expr::constant(c2 * c2) * eq.a0;
    return grid_max_abs(simplify(comb), eq.domain) <= tol;
}

bool criterion_strelchenya(const RiccatiEquation& eq, const Expr& alpha, const Expr& beta,
                           double tol) {
    for (double t : eq.domain.grid()) {
        if (std::fabs(alpha.eval(t)) <= 1e-12 || std::fabs(beta.eval(t)) <= 1e-12)
            throw DomainError("criterion_strelchenya: alpha or beta vanishes at t = " +
                              std::to_string(t));
    }
    // alpha^2 a2 + alpha beta a1 + beta^2 a0 = beta alpha' - alpha beta'
    const Expr lhs = alpha * alpha * eq.a2 + alpha * beta * eq.a1 + beta * beta * eq.a0;
    const Expr rhs = beta * differentiate(alpha) - alpha * differentiate(beta);
    return grid_max_abs(simplify(lhs - rhs), eq.domain) <= tol;
}

double residual_max(const RiccatiEquation& eq, const Expr& x) {
    const Expr res = differentiate(x) - (eq.a0 + eq.a1 * x + eq.a2 * x * x);
    return grid_max_abs(simplify(res), eq.domain);
}

std::optional<Expr> guess_particular_solution(const RiccatiEquation& eq, double tol) {
    // Constant roots of the frozen coefficients.
    double v0 = 0.0, v1 = 0.0, v2 = 0.0;
    if (coefficient_constant_on_grid(eq.a0, eq.domain, &v0) &&
        coefficient_constant_on_grid(eq.a1, eq.domain, &v1) &&
        coefficient_constant_on_grid(eq.a2, eq.domain, &v2)) {
        try {
            for (double root : constant_solutions(ConstRiccati{{v2, v1, v0}})) {
                const Expr cand = Expr::constant(root);
                if (residual_max(eq, cand) <= tol) return cand;
            }
        } catch (const DomainError&) {
            // all-zero coefficients: fall through to the generic candidates
        }
    }

    std::vector<Expr> candidates;
    candidates.push_back(Expr::constant(1));

    const Expr da2 = differentiate(eq.a2);
    const Expr da0 = differentiate(eq.a0);
    const Expr two_a2 = Expr::constant(2) * eq.a2;
    const std::array<Expr, 4> big_x = {
        Expr::constant(0),
        -da2 / eq.a2,
        eq.a1 - Expr::constant(2) * Expr::sqrt(eq.a0 * eq.a2),
        eq.a0 - eq.a2 + da0 / eq.a0 - da2 / eq.a2,
    };
    for (const Expr& X : big_x) candidates.push_back(simplify((X - eq.a1) / two_a2));

    for (const Expr& cand : candidates) {
        try {
            if (residual_max(eq, cand) <= tol) return cand;
        } catch (const DomainError&) {
            // candidate not evaluable on this domain; try the next one
        } catch (const QuadratureError&) {
        }
    }
    return std::nullopt;
}

}  // namespace riccati
