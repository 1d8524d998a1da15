#ifndef RICCATI_SL2_HPP
#define RICCATI_SL2_HPP

#include <array>
#include <cmath>

#include "riccati/expr.hpp"
#include "riccati/interval.hpp"

namespace riccati {

/// Point of the one-point compactification of the real line.
class ExtendedReal {
public:
    ExtendedReal() : value_(0.0), infinite_(false) {}
    static ExtendedReal finite(double v) { return ExtendedReal(v, false); }
    static ExtendedReal infinity() { return ExtendedReal(0.0, true); }

    bool is_infinite() const { return infinite_; }
    double value() const {
        if (infinite_) throw std::logic_error("value() on the point at infinity");
        return value_;
    }

private:
    ExtendedReal(double v, bool inf) : value_(v), infinite_(inf) {}
    double value_;
    bool infinite_;
};

/// Element of sl(2,R) in the vector-field basis, ordered as the column
/// (c2, c1, c0) of quadratic, linear and constant coefficients.
struct Sl2Vector {
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
};

inline Sl2Vector operator+(const Sl2Vector& v, const Sl2Vector& w) {
    return {v.c2 + w.c2, v.c1 + w.c1, v.c0 + w.c0};
}
inline Sl2Vector operator-(const Sl2Vector& v, const Sl2Vector& w) {
    return {v.c2 - w.c2, v.c1 - w.c1, v.c0 - w.c0};
}

/// Constant 2x2 real matrix, row-major.
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
};

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 mat3_mul(const Mat3& x, const Mat3& y);
Sl2Vector mat3_apply(const Mat3& m, const Sl2Vector& v);

/// Lie bracket in the vector-field basis:
/// [L0,L1] = L0, [L0,L2] = 2 L1, [L1,L2] = L2, extended bilinearly.
Sl2Vector sl2_bracket(const Sl2Vector& v, const Sl2Vector& w);

/// Smooth curve of unimodular 2x2 matrices: an element of Map(R, SL(2,R)).
struct GroupElement {
    Expr alpha, beta, gamma, delta;
    Interval domain;

    GroupElement() : alpha(Expr::constant(1)), beta(Expr::constant(0)),
                     gamma(Expr::constant(0)), delta(Expr::constant(1)) {}
    GroupElement(Expr a, Expr b, Expr c, Expr d, Interval dom)
        : alpha(std::move(a)), beta(std::move(b)), gamma(std::move(c)), delta(std::move(d)),
          domain(dom) {}

    static GroupElement identity(const Interval& dom);
    /// Constant matrix as a (constant) curve.
    static GroupElement constant(const Mat2& m, const Interval& dom);
    /// Divides all entries by sqrt(det); det must be positive on the
    /// domain samples.
    static GroupElement from_unnormalized(const Expr& a, const Expr& b, const Expr& c,
                                          const Expr& d, const Interval& dom);

    Mat2 at(double t) const {
        return {alpha.eval(t), beta.eval(t), gamma.eval(t), delta.eval(t)};
    }
};

/// Matrix product a2 * a1 (apply a1 first); domain is the intersection.
/// Checks unimodularity of the result on the sample grid.
GroupElement compose(const GroupElement& a2, const GroupElement& a1);

/// (delta, -beta, -gamma, alpha); inverse of a unimodular element.
GroupElement inverse(const GroupElement& a);

/// True iff |alpha*delta - beta*gamma - 1| <= tol on every domain sample.
bool check_unimodular(const GroupElement& a, double tol = 1e-9);

/// Moebius action on the completed real line at time t. The result is
/// declared infinite when |gamma*x + delta| < 1e-13 * (1 + |x|).
ExtendedReal mobius_apply(const GroupElement& a, const ExtendedReal& x, double t);

/// Symbolic Moebius image (alpha*y + beta) / (gamma*y + delta).
Expr mobius_of_expr(const GroupElement& a, const Expr& y);

/// Cocycle theta(A) = Adot A^{-1} as an sl(2,R) vector:
/// (gamma*ddelta - delta*dgamma,
///  delta*dalpha - alpha*ddelta + beta*dgamma - gamma*dbeta,
///  alpha*dbeta - beta*dalpha).
Sl2Vector cocycle_theta(const GroupElement& a, double t);

/// The three cocycle components as symbolic expressions (c2, c1, c0).
std::array<Expr, 3> cocycle_theta_exprs(const GroupElement& a);

/// 3x3 adjoint-action matrix
/// [[d^2, -d*c, c^2], [-2*b*d, a*d + b*c, -2*a*c], [b^2, -a*b, a^2]]
/// evaluated at time t.
Mat3 adjoint_matrix_at(const GroupElement& a, double t);

/// Same matrix for a constant element.
Mat3 adjoint_matrix(const Mat2& m);

}  // namespace riccati

#endif
