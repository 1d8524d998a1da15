#include <cmath>

#include "doctest.h"
#include "riccati/sl2.hpp"
#include "test_util.hpp"

using riccati::Expr;
using riccati::ExtendedReal;
using riccati::GroupElement;
using riccati::Interval;
using riccati::Mat2;
using riccati::Mat3;
using riccati::Sl2Vector;
using riccati::parse_expr;

namespace {

const Interval kDom(0.0, 1.0, 101);

// Independent 3x3 determinant for the representation checks.
double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double vec_inf_norm(const Sl2Vector& v) {
    return std::max({std::fabs(v.c2), std::fabs(v.c1), std::fabs(v.c0)});
}

GroupElement shear_upper(const Expr& b) {
    return GroupElement(Expr::constant(1), b, Expr::constant(0), Expr::constant(1), kDom);
}

}  // namespace

TEST_CASE("compose: identity, inverse, hand product") {
    const GroupElement id = GroupElement::identity(kDom);
    testutil::Rng rng(11);
    const GroupElement a = testutil::random_group_element(rng, kDom);

    const GroupElement ia = compose(id, a);
    const GroupElement ai = compose(a, riccati::inverse(a));
    for (double t : kDom.grid()) {
        CHECK(ia.at(t).a == doctest::Approx(a.at(t).a).epsilon(1e-12));
        CHECK(ia.at(t).d == doctest::Approx(a.at(t).d).epsilon(1e-12));
        const Mat2 m = ai.at(t);
        CHECK(std::fabs(m.a - 1.0) < 1e-9);
        CHECK(std::fabs(m.b) < 1e-9);
        CHECK(std::fabs(m.c) < 1e-9);
        CHECK(std::fabs(m.d - 1.0) < 1e-9);
    }

    // [[1,-t],[0,1]] * [[1,0],[-1,1]] = [[1+t, -t], [-1, 1]]
    const GroupElement u(Expr::constant(1), -Expr::time(), Expr::constant(0), Expr::constant(1),
                         kDom);
    const GroupElement l(Expr::constant(1), Expr::constant(0), Expr::constant(-1),
                         Expr::constant(1), kDom);
    const GroupElement p = compose(u, l);
    for (double t : {0.0, 0.5, 1.0}) {
        CHECK(p.at(t).a == doctest::Approx(1.0 + t).epsilon(1e-15));
        CHECK(p.at(t).b == doctest::Approx(-t).epsilon(1e-15));
        CHECK(p.at(t).c == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(p.at(t).d == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("inverse formula (delta, -beta, -gamma, alpha)") {
    const GroupElement id = GroupElement::identity(kDom);
    const GroupElement iid = riccati::inverse(id);
    CHECK(iid.at(0.3).a == 1.0);
    CHECK(iid.at(0.3).b == 0.0);

    const Expr x1 = parse_expr("sin(t) + 2");
    const GroupElement shift = shear_upper(riccati::simplify(-x1));
    const GroupElement unshift = riccati::inverse(shift);
    for (double t : {0.0, 0.7}) {
        CHECK(unshift.at(t).b == doctest::Approx(x1.eval(t)).epsilon(1e-15));
        CHECK(unshift.at(t).a == 1.0);
        CHECK(unshift.at(t).c == 0.0);
    }

    const GroupElement rot = GroupElement::constant(Mat2{0.0, -1.0, 1.0, 0.0}, kDom);
    const Mat2 ir = riccati::inverse(rot).at(0.0);
    CHECK(ir.a == 0.0);
    CHECK(ir.b == 1.0);
    CHECK(ir.c == -1.0);
    CHECK(ir.d == 0.0);
}

TEST_CASE("mobius action on the completed line") {
    const GroupElement rot = GroupElement::constant(Mat2{0.0, -1.0, 1.0, 0.0}, kDom);
    CHECK(mobius_apply(rot, ExtendedReal::finite(0.0), 0.5).is_infinite());
    const ExtendedReal img = mobius_apply(rot, ExtendedReal::infinity(), 0.5);
    CHECK(!img.is_infinite());
    CHECK(img.value() == 0.0);

    const GroupElement id = GroupElement::identity(kDom);
    for (double x : {-3.0, 0.0, 2.5}) {
        CHECK(mobius_apply(id, ExtendedReal::finite(x), 0.1).value() == x);
    }
    CHECK(mobius_apply(id, ExtendedReal::infinity(), 0.1).is_infinite());
}

TEST_CASE("mobius action axioms, including the point at infinity") {
    testutil::Rng rng(21);
    for (int i = 0; i < 10; ++i) {
        const GroupElement a1 = testutil::random_group_element(rng, kDom);
        const GroupElement a2 = testutil::random_group_element(rng, kDom);
        const GroupElement prod = compose(a2, a1);
        for (int p = 0; p < 8; ++p) {
            const double t = rng.uniform(0.0, 1.0);
            const ExtendedReal x =
                (p == 0) ? ExtendedReal::infinity() : ExtendedReal::finite(rng.uniform(-4.0, 4.0));
            const ExtendedReal two_step = mobius_apply(a2, mobius_apply(a1, x, t), t);
            const ExtendedReal one_step = mobius_apply(prod, x, t);
            REQUIRE(two_step.is_infinite() == one_step.is_infinite());
            if (!two_step.is_infinite()) {
                CHECK(two_step.value() ==
                      doctest::Approx(one_step.value()).epsilon(1e-8).scale(1.0));
            }
        }
    }
}

TEST_CASE("cocycle of hand-computed elements") {
    // Constant element: zero cocycle.
    testutil::Rng rng(31);
    const GroupElement c = GroupElement::constant(testutil::random_unimodular_mat2(rng), kDom);
    const Sl2Vector zero = cocycle_theta(c, 0.4);
    CHECK(vec_inf_norm(zero) == 0.0);

    // A(t) = [[1,-t],[0,1]]: Adot A^-1 = [[0,-1],[0,0]], components (0,0,-1).
    const GroupElement shift = shear_upper(-Expr::time());
    for (double t : {0.0, 0.5, 1.0}) {
        const Sl2Vector th = cocycle_theta(shift, t);
        CHECK(th.c2 == 0.0);
        CHECK(th.c1 == 0.0);
        CHECK(th.c0 == -1.0);
    }

    // A(t) = diag(e^{t/2}, e^{-t/2}): Adot A^-1 = diag(1/2,-1/2), components (0,1,0).
    const GroupElement diag(parse_expr("exp(t/2)"), Expr::constant(0), Expr::constant(0),
                            parse_expr("exp(-t/2)"), kDom);
    for (double t : {0.0, 0.8}) {
        const Sl2Vector th = cocycle_theta(diag, t);
        CHECK(th.c2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
        CHECK(th.c1 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(th.c0 == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    }
}

TEST_CASE("cocycle matrix reconstruction matches finite differences of A") {
    testutil::Rng rng(41);
    const double h = 1e-6;
    for (int i = 0; i < 5; ++i) {
        const GroupElement a = testutil::random_group_element(rng, kDom);
        for (double t : {0.25, 0.5, 0.75}) {
            const Sl2Vector th = cocycle_theta(a, t);
            // Reconstruct the 2x2 matrix th.c2*M2 + th.c1*M1 + th.c0*M0 with
            // M0 = [[0,1],[0,0]], M1 = 1/2 diag(1,-1), M2 = [[0,0],[-1,0]].
            const double m11 = 0.5 * th.c1;
            const double m12 = th.c0;
            const double m21 = -th.c2;
            const double m22 = -0.5 * th.c1;

            const Mat2 ap = a.at(t + h);
            const Mat2 am = a.at(t - h);
            const Mat2 a0 = a.at(t);
            const Mat2 adot{(ap.a - am.a) / (2 * h), (ap.b - am.b) / (2 * h),
                            (ap.c - am.c) / (2 * h), (ap.d - am.d) / (2 * h)};
            const Mat2 ainv{a0.d, -a0.b, -a0.c, a0.a};
            const Mat2 fd = adot * ainv;
            CHECK(std::fabs(fd.a - m11) < 1e-6 * (1.0 + std::fabs(m11)));
            CHECK(std::fabs(fd.b - m12) < 1e-6 * (1.0 + std::fabs(m12)));
            CHECK(std::fabs(fd.c - m21) < 1e-6 * (1.0 + std::fabs(m21)));
            CHECK(std::fabs(fd.d - m22) < 1e-6 * (1.0 + std::fabs(m22)));
            // Trace-free by unimodularity.
            CHECK(std::fabs(fd.a + fd.d) < 1e-6);
        }
    }
}

TEST_CASE("1-cocycle identity for the adjoint action") {
    testutil::Rng rng(51);
    for (int i = 0; i < 12; ++i) {
        const GroupElement a1 = testutil::random_group_element(rng, kDom);
        const GroupElement a2 = testutil::random_group_element(rng, kDom);
        const GroupElement prod = compose(a2, a1);
        for (int p = 0; p < 10; ++p) {
            const double t = rng.uniform(0.0, 1.0);
            const Sl2Vector lhs = cocycle_theta(prod, t);
            const Sl2Vector rhs =
                cocycle_theta(a2, t) + mat3_apply(adjoint_matrix_at(a2, t), cocycle_theta(a1, t));
            CHECK(vec_inf_norm(lhs - rhs) < 1e-8);
        }
    }
}

TEST_CASE("adjoint matrices form a representation with unit determinant") {
    testutil::Rng rng(61);
    for (int i = 0; i < 10; ++i) {
        const GroupElement a1 = testutil::random_group_element(rng, kDom);
        const GroupElement a2 = testutil::random_group_element(rng, kDom);
        const GroupElement prod = compose(a2, a1);
        for (double t : {0.2, 0.8}) {
            const Mat3 lhs = adjoint_matrix_at(prod, t);
            const Mat3 rhs = riccati::mat3_mul(adjoint_matrix_at(a2, t), adjoint_matrix_at(a1, t));
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) CHECK(std::fabs(lhs[r][c] - rhs[r][c]) < 1e-9);
            CHECK(det3(adjoint_matrix_at(a1, t)) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    CHECK(adjoint_matrix(Mat2{}) == Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}});
}

TEST_CASE("sl2 bracket structure constants") {
    const Sl2Vector l0{0, 0, 1};
    const Sl2Vector l1{0, 1, 0};
    const Sl2Vector l2{1, 0, 0};

    const Sl2Vector b01 = sl2_bracket(l0, l1);
    CHECK(b01.c2 == 0.0);
    CHECK(b01.c1 == 0.0);
    CHECK(b01.c0 == 1.0);

    const Sl2Vector b02 = sl2_bracket(l0, l2);
    CHECK(b02.c2 == 0.0);
    CHECK(b02.c1 == 2.0);
    CHECK(b02.c0 == 0.0);

    const Sl2Vector b12 = sl2_bracket(l1, l2);
    CHECK(b12.c2 == 1.0);
    CHECK(b12.c1 == 0.0);
    CHECK(b12.c0 == 0.0);

    testutil::Rng rng(71);
    for (int i = 0; i < 5; ++i) {
        const Sl2Vector v{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(vec_inf_norm(sl2_bracket(v, v)) == 0.0);
        const Sl2Vector w{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(vec_inf_norm(sl2_bracket(v, w) + sl2_bracket(w, v)) == 0.0);
    }
}

TEST_CASE("matrix basis commutators carry the opposite sign") {
    // M0 = [[0,1],[0,0]], M1 = 1/2 diag(1,-1), M2 = [[0,0],[-1,0]].
    const Mat2 m0{0.0, 1.0, 0.0, 0.0};
    const Mat2 m1{0.5, 0.0, 0.0, -0.5};
    const Mat2 m2{0.0, 0.0, -1.0, 0.0};
    auto comm = [](const Mat2& x, const Mat2& y) {
        const Mat2 xy = x * y;
        const Mat2 yx = y * x;
        return Mat2{xy.a - yx.a, xy.b - yx.b, xy.c - yx.c, xy.d - yx.d};
    };
    const Mat2 c01 = comm(m0, m1);
    CHECK(c01.a == -m0.a);
    CHECK(c01.b == -m0.b);
    CHECK(c01.c == -m0.c);
    CHECK(c01.d == -m0.d);
    const Mat2 c02 = comm(m0, m2);
    CHECK(c02.a == -2.0 * m1.a);
    CHECK(c02.b == -2.0 * m1.b);
    CHECK(c02.c == -2.0 * m1.c);
    CHECK(c02.d == -2.0 * m1.d);
    const Mat2 c12 = comm(m1, m2);
    CHECK(c12.a == -m2.a);
    CHECK(c12.b == -m2.b);
    CHECK(c12.c == -m2.c);
    CHECK(c12.d == -m2.d);
}

TEST_CASE("check_unimodular") {
    CHECK(check_unimodular(GroupElement::identity(kDom), 1e-9));
    CHECK(check_unimodular(shear_upper(-Expr::time()), 1e-9));
    CHECK(!check_unimodular(GroupElement::constant(Mat2{2.0, 0.0, 0.0, 1.0}, kDom), 1e-9));
}

TEST_CASE("from_unnormalized rescales to determinant one") {
    // [[1,-x1],[1,-x2]] has determinant x1 - x2 > 0 here.
    const Expr x1 = parse_expr("tan(t + 0.8)");
    const Expr x2 = parse_expr("tan(t)");
    const Interval dom(0.0, 0.6, 61);
    const GroupElement g = GroupElement::from_unnormalized(
        Expr::constant(1), riccati::simplify(-x1), Expr::constant(1), riccati::simplify(-x2), dom);
    CHECK(check_unimodular(g, 1e-9));

    // Negative determinant is rejected.
    CHECK_THROWS_AS(GroupElement::from_unnormalized(Expr::constant(1), riccati::simplify(-x2),
                                                    Expr::constant(1), riccati::simplify(-x1), dom),
                    riccati::DomainError);
}
