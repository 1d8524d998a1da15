#include "riccati/sl2.hpp"

#include <cmath>
#include <string>

namespace riccati {

Mat3 mat3_mul(const Mat3& x, const Mat3& y) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += x[i][k] * y[k][j];
            r[i][j] = s;
        }
    return r;
}

Sl2Vector mat3_apply(const Mat3& m, const Sl2Vector& v) {
    return {m[0][0] * v.c2 + m[0][1] * v.c1 + m[0][2] * v.c0,
            m[1][0] * v.c2 + m[1][1] * v.c1 + m[1][2] * v.c0,
            m[2][0] * v.c2 + m[2][1] * v.c1 + m[2][2] * v.c0};
}

Sl2Vector sl2_bracket(const Sl2Vector& v, const Sl2Vector& w) {
    return {v.c1 * w.c2 - v.c2 * w.c1,
            2.0 * (v.c0 * w.c2 - v.c2 * w.c0),
            v.c0 * w.c1 - v.c1 * w.c0};
}

GroupElement GroupElement::identity(const Interval& dom) {
    return GroupElement(Expr::constant(1), Expr::constant(0), Expr::constant(0),
                        Expr::constant(1), dom);
}

GroupElement GroupElement::constant(const Mat2& m, const Interval& dom) {
    return GroupElement(Expr::constant(m.a), Expr::constant(m.b), Expr::constant(m.c),
                        Expr::constant(m.d), dom);
}

GroupElement GroupElement::from_unnormalized(const Expr& a, const Expr& b, const Expr& c,
                                             const Expr& d, const Interval& dom) {
    const Expr det = simplify(a * d - b * c);
    for (double t : dom.grid()) {
        if (!(det.eval(t) > 0.0))
            throw DomainError("from_unnormalized: determinant not positive at t = " +
                              std::to_string(t));
    }
    const Expr scale = Expr::sqrt(det);
    return GroupElement(simplify(a / scale), simplify(b / scale), simplify(c / scale),
                        simplify(d / scale), dom);
}

GroupElement compose(const GroupElement& a2, const GroupElement& a1) {
    const Interval dom = a2.domain.intersect(a1.domain);
    GroupElement r(simplify(a2.alpha * a1.alpha + a2.beta * a1.gamma),
                   simplify(a2.alpha * a1.beta + a2.beta * a1.delta),
                   simplify(a2.gamma * a1.alpha + a2.delta * a1.gamma),
                   simplify(a2.gamma * a1.beta + a2.delta * a1.delta), dom);
    if (!check_unimodular(r, 1e-9))
        throw DomainError("compose: product is not unimodular on the sample grid");
    return r;
}

GroupElement inverse(const GroupElement& a) {
    return GroupElement(a.delta, simplify(-a.beta), simplify(-a.gamma), a.alpha, a.domain);
}

bool check_unimodular(const GroupElement& a, double tol) {
    const Expr det = simplify(a.alpha * a.delta - a.beta * a.gamma);
    for (double t : a.domain.grid()) {
        if (!(std::fabs(det.eval(t) - 1.0) <= tol)) return false;
    }
    return true;
}

ExtendedReal mobius_apply(const GroupElement& a, const ExtendedReal& x, double t) {
    const Mat2 m = a.at(t);
    if (x.is_infinite()) {
        if (std::fabs(m.c) < 1e-13) return ExtendedReal::infinity();
        return ExtendedReal::finite(m.a / m.c);
    }
    const double v = x.value();
    const double den = m.c * v + m.d;
    if (std::fabs(den) < 1e-13 * (1.0 + std::fabs(v))) return ExtendedReal::infinity();
    return ExtendedReal::finite((m.a * v + m.b) / den);
}

Expr mobius_of_expr(const GroupElement& a, const Expr& y) {
    return simplify((a.alpha * y + a.beta) / (a.gamma * y + a.delta));
}

std::array<Expr, 3> cocycle_theta_exprs(const GroupElement& a) {
    const Expr da = differentiate(a.alpha);
    const Expr db = differentiate(a.beta);
    const Expr dc = differentiate(a.gamma);
    const Expr dd = differentiate(a.delta);
    return {simplify(a.gamma * dd - a.delta * dc),
            simplify(a.delta * da - a.alpha * dd + a.beta * dc - a.gamma * db),
            simplify(a.alpha * db - a.beta * da)};
}

Sl2Vector cocycle_theta(const GroupElement& a, double t) {
    const auto e = cocycle_theta_exprs(a);
    return {e[0].eval(t), e[1].eval(t), e[2].eval(t)};
}

Mat3 adjoint_matrix(const Mat2& m) {
    return Mat3{{{m.d * m.d, -m.d * m.c, m.c * m.c},
                 {-2.0 * m.b * m.d, m.a * m.d + m.b * m.c, -2.0 * m.a * m.c},
                 {m.b * m.b, -m.a * m.b, m.a * m.a}}};
}

Mat3 adjoint_matrix_at(const GroupElement& a, double t) { return adjoint_matrix(a.at(t)); }

}  // namespace riccati
