#include "riccati/reduction.hpp"

#include <cmath>
#include <string>

namespace riccati {
namespace {

void require_nonvanishing(const Expr& e, const Interval& dom, const char* what) {
    for (double t : dom.grid()) {
        if (std::fabs(e.eval(t)) <= 1e-9)
            throw DomainError(std::string(what) + " vanishes at t = " + std::to_string(t));
    }
}

void require_greater(const Expr& a, const Expr& b, const Interval& dom, const char* what) {
    for (double t : dom.grid()) {
        if (!(a.eval(t) > b.eval(t)))
            throw DomainError(std::string(what) + " violated at t = " + std::to_string(t));
    }
}

const Expr kOne = Expr::constant(1);
const Expr kZero = Expr::constant(0);

}  // namespace

KnownSolutions KnownSolutions::verify(const RiccatiEquation& eq, const std::vector<Expr>& xs,
                                      double tol) {
    if (xs.empty() || xs.size() > 3)
        throw std::invalid_argument("KnownSolutions: expected 1 to 3 solutions");
    KnownSolutions ks;
    ks.x1 = xs[0];
    if (xs.size() > 1) ks.x2 = xs[1];
    if (xs.size() > 2) ks.x3 = xs[2];
    for (const Expr& x : xs) {
        const double r = residual_max(eq, x);
        if (!(r <= tol))
            throw DomainError("known solution " + x.str() + " has residual " +
                              std::to_string(r) + " > tolerance");
        ks.verified_residuals.push_back(r);
    }
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            require_nonvanishing(simplify(xs[i] - xs[j]), eq.domain, "difference of solutions");
    if (xs.size() == 3) {
        require_greater(xs[0], xs[1], eq.domain, "ordering x1 > x2");
        require_greater(xs[1], xs[2], eq.domain, "ordering x2 > x3");
    }
    return ks;
}

GroupElement shift_by_solution(const Expr& x1, const Interval& domain) {
    return GroupElement(kOne, simplify(-x1), kZero, kOne, domain);
}

GroupElement coshift_by_solution(const Expr& x1, const Interval& domain) {
    try {
        require_nonvanishing(x1, domain, "solution");
    } catch (const DomainError&) {
        throw DomainError("coshift requires nonvanishing solution");
    }
    return GroupElement(kOne, kZero, simplify(-(kOne / x1)), kOne, domain);
}

GroupElement two_solution_element(const Expr& x1, const Expr& x2, TwoSolutionVariant variant,
                                  const Interval& domain) {
    const Expr diff = simplify(x1 - x2);
    require_nonvanishing(diff, domain, "x1 - x2");
    switch (variant) {
        case TwoSolutionVariant::Composed:
            return GroupElement(kOne, simplify(-x1), simplify(kOne / diff),
                                simplify(-(x2 / diff)), domain);
        case TwoSolutionVariant::Standard: {
            require_greater(x1, x2, domain, "ordering x1 > x2");
            const Expr s = Expr::sqrt(diff);
            return GroupElement(simplify(kOne / s), simplify(-(x1 / s)), simplify(kOne / s),
                                simplify(-(x2 / s)), domain);
        }
        case TwoSolutionVariant::Alternative: {
            require_nonvanishing(x1, domain, "x1");
            return GroupElement(simplify(x1 / diff), simplify(-(x1 * x2 / diff)),
                                simplify(-(kOne / x1)), kOne, domain);
        }
    }
    throw std::logic_error("two_solution_element: unreachable");
}

GroupElement three_solution_element(const Expr& x1, const Expr& x2, const Expr& x3,
                                    const Interval& domain) {
    require_greater(x1, x2, domain, "ordering x1 > x2");
    require_greater(x2, x3, domain, "ordering x2 > x3");
    // diag(z^(-1/2), z^(1/2)) * composed element, z = (x1-x2)(x1-x3)/(x2-x3):
    //   [[w1, -x1 w1], [w2, -x2 w2]]
    // with w1 = sqrt((x2-x3)/((x1-x2)(x1-x3))), w2 = sqrt((x1-x3)/((x1-x2)(x2-x3))).
    const Expr d12 = simplify(x1 - x2);
    const Expr d13 = simplify(x1 - x3);
    const Expr d23 = simplify(x2 - x3);
    const Expr w1 = Expr::sqrt(d23 / (d12 * d13));
    const Expr w2 = Expr::sqrt(d13 / (d12 * d23));
    return GroupElement(simplify(w1), simplify(-(x1 * w1)), simplify(w2), simplify(-(x2 * w2)),
                        domain);
}

std::pair<GroupElement, RiccatiEquation> scale_normalize_a1(const RiccatiEquation& eq) {
    const Expr half_phi = Expr::constant(0.5) * antiderivative_from(eq.a1, eq.domain.t_lo);
    const Expr alpha = simplify(Expr::exp(-half_phi));
    const GroupElement g(alpha, kZero, kZero, simplify(kOne / alpha), eq.domain);
    return {g, transform(eq, g)};
}

std::pair<GroupElement, RiccatiEquation> shift_normalize_a1(const RiccatiEquation& eq) {
    require_nonvanishing(eq.a2, eq.domain, "a2");
    const Expr b = simplify(eq.a1 / (Expr::constant(2) * eq.a2));
    const GroupElement g(kOne, b, kZero, kOne, eq.domain);
    return {g, transform(eq, g)};
}

Expr murphy_X(const RiccatiEquation& eq, const Expr& x1) {
    return simplify(Expr::constant(2) * x1 * eq.a2 + eq.a1);
}

}  // namespace riccati
