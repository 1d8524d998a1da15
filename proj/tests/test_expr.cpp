#include <array>
#include <cmath>
#include <thread>
#include <vector>

#include "doctest.h"
#include "riccati/expr.hpp"
#include "riccati/quadrature.hpp"
#include "test_util.hpp"

using riccati::DomainError;
using riccati::Expr;
using riccati::ParseError;
using riccati::parse_expr;

TEST_CASE("parse: polynomial, trig, exponential examples") {
    CHECK(parse_expr("2 - 3*t + t^2").eval(2.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::fabs(parse_expr("sin(t)/t").eval(M_PI)) < 1e-15);
    CHECK(parse_expr("exp(-0.5*t)").eval(0.0) == 1.0);
    CHECK(parse_expr("t^2").eval(-2.0) == 4.0);
    CHECK(parse_expr("pi").eval(0.0) == M_PI);
    CHECK(parse_expr("e").eval(0.0) == M_E);
    CHECK(parse_expr("2*e").eval(0.0) == 2.0 * M_E);
    CHECK(parse_expr("2e2").eval(0.0) == 200.0);
}

TEST_CASE("parse: precedence and associativity") {
    // ^ is right-associative; unary minus binds looser than ^.
    CHECK(parse_expr("2^3^2").eval(0.0) == 512.0);
    CHECK(parse_expr("-2^2").eval(0.0) == -4.0);
    CHECK(parse_expr("(-2)^2").eval(0.0) == 4.0);
    CHECK(parse_expr("2^-2").eval(0.0) == 0.25);
    CHECK(parse_expr("6/3/2").eval(0.0) == 1.0);
    CHECK(parse_expr("1 - 2 - 3").eval(0.0) == -4.0);
    CHECK(parse_expr("2 + 3*4").eval(0.0) == 14.0);
}

TEST_CASE("parse: errors carry byte offsets") {
    CHECK_THROWS_AS(parse_expr("2 + "), ParseError);
    CHECK_THROWS_AS(parse_expr("sin(t"), ParseError);
    CHECK_THROWS_AS(parse_expr("2 $ 3"), ParseError);
    try {
        parse_expr("1 + foo(t)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
    try {
        parse_expr("2 + * 3");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
}

TEST_CASE("eval: domain errors") {
    CHECK_THROWS_AS(parse_expr("log(0 - 1)").eval(0.0), DomainError);
    CHECK_THROWS_AS(parse_expr("log(t)").eval(0.0), DomainError);
    CHECK_THROWS_AS(parse_expr("sqrt(0 - t)").eval(2.0), DomainError);
    CHECK_THROWS_AS(parse_expr("1/t").eval(0.0), DomainError);
    CHECK_THROWS_AS(parse_expr("t^0.5").eval(-1.0), DomainError);
    CHECK_THROWS_AS(parse_expr("exp(t)").eval(1e6), DomainError);
    CHECK(parse_expr("t^0.5").eval(4.0) == 2.0);
    // Integer exponents go through repeated multiplication: negative bases fine.
    CHECK(parse_expr("(-2)^3").eval(0.0) == -8.0);
    CHECK(parse_expr("t^-1").eval(4.0) == 0.25);
}

TEST_CASE("integral nodes evaluate by quadrature") {
    const Expr one = Expr::constant(1.0);
    CHECK(riccati::antiderivative_from(one, 0.0).eval(3.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(riccati::antiderivative_from(one, 0.0).eval(5.0) == doctest::Approx(5.0).epsilon(1e-12));

    // Oracle: closed-form antiderivative of exp(-t) gives 1 - e^-1.
    const Expr decays = parse_expr("exp(-t)");
    const double expected = 1.0 - std::exp(-1.0);
    CHECK(std::fabs(riccati::antiderivative_from(decays, 0.0).eval(1.0) - expected) < 1e-9);

    // Oracle: arctan.
    const Expr lorentz = parse_expr("1/(1 + t^2)");
    CHECK(std::fabs(riccati::antiderivative_from(lorentz, 0.0).eval(1.0) - std::atan(1.0)) < 1e-9);

    // 2t from 1: t^2 - 1.
    CHECK(riccati::antiderivative_from(parse_expr("2*t"), 1.0).eval(2.0) ==
          doctest::Approx(3.0).epsilon(1e-10));

    // Integrating backwards from the lower limit flips the sign.
    CHECK(riccati::antiderivative_from(one, 0.0).eval(-2.0) ==
          doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("differentiate: table rules") {
    const Expr t = Expr::time();
    CHECK(riccati::differentiate(t * t).eval(3.0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(riccati::differentiate(Expr::sin(t)).same_structure(Expr::cos(t)));
    CHECK(riccati::differentiate(parse_expr("t^3")).eval(2.0) == 12.0);
    CHECK(riccati::differentiate(parse_expr("exp(2*t)")).eval(0.5) ==
          doctest::Approx(2.0 * std::exp(1.0)).epsilon(1e-14));
    CHECK(riccati::differentiate(parse_expr("log(t)")).eval(4.0) == doctest::Approx(0.25));
    CHECK(riccati::differentiate(parse_expr("sqrt(t)")).eval(4.0) == doctest::Approx(0.25));
    CHECK(riccati::differentiate(parse_expr("tan(t)")).eval(0.3) ==
          doctest::Approx(1.0 + std::pow(std::tan(0.3), 2)).epsilon(1e-14));
    // Non-constant exponent: d/dt t^t = t^t (log t + 1).
    CHECK(riccati::differentiate(parse_expr("t^t")).eval(2.0) ==
          doctest::Approx(4.0 * (std::log(2.0) + 1.0)).epsilon(1e-14));
    // Derivative of a running integral is the integrand.
    const Expr f = parse_expr("sin(t) + t^2");
    CHECK(riccati::differentiate(riccati::antiderivative_from(f, 0.0)).same_structure(f));
}

TEST_CASE("differentiate: finite-difference oracle on random ASTs") {
    testutil::Rng rng(20260808);
    const double h = 1e-5;
    int checked_points = 0;
    for (int i = 0; i < 60; ++i) {
        const Expr e = testutil::random_ast(rng, 3);
        const Expr de = riccati::differentiate(e);
        int valid = 0;
        for (int p = 0; p < 50 && valid < 12; ++p) {
            const double t = rng.uniform(-1.5, 1.5);
            double fp, fm, f0, sym;
            try {
                f0 = e.eval(t);
                fp = e.eval(t + h);
                fm = e.eval(t - h);
                sym = de.eval(t);
            } catch (const DomainError&) {
                continue;
            }
            // Stay on well-conditioned stencils.
            if (std::fabs(f0) > 30.0 || std::fabs(fp) > 1e3 || std::fabs(fm) > 1e3) continue;
            if (std::fabs(sym) > 1e4) continue;
            const double fd = (fp - fm) / (2.0 * h);
            const double err = std::fabs(sym - fd);
            CHECK(err <= std::max(1e-8, 1e-6 * std::fabs(sym)));
            ++valid;
            ++checked_points;
        }
    }
    CHECK(checked_points > 300);
}

TEST_CASE("fundamental theorem: antiderivative slope matches the integrand") {
    testutil::Rng rng(77);
    for (int i = 0; i < 5; ++i) {
        Expr e = testutil::random_smooth(rng);
        const Expr anti = riccati::antiderivative_from(e, 0.0);
        CHECK(riccati::simplify(riccati::differentiate(anti)).same_structure(riccati::simplify(e)));
        const double h = 1e-5;
        for (double t : {0.3, 0.9, 1.4}) {
            const double slope = (anti.eval(t + h) - anti.eval(t - h)) / (2.0 * h);
            CHECK(std::fabs(slope - e.eval(t)) < 1e-6 * (1.0 + std::fabs(e.eval(t))));
        }
    }
}

TEST_CASE("simplify: identities and constant folding") {
    const Expr t = Expr::time();
    const Expr zero = Expr::constant(0.0);
    const Expr one = Expr::constant(1.0);
    CHECK(riccati::simplify(zero * t + Expr::sin(t)).same_structure(Expr::sin(t)));
    CHECK(riccati::simplify(Expr::pow(t, one)).same_structure(t));
    CHECK(riccati::simplify(t * one).same_structure(t));
    CHECK(riccati::simplify(t - t).is_constant());
    CHECK(riccati::simplify(parse_expr("2 + 3*4")).constant_value() == 14.0);
    CHECK(riccati::simplify(parse_expr("sin(0)")).constant_value() == 0.0);
    // Folding must not hide domain errors.
    const Expr bad = parse_expr("log(0 - 1)");
    CHECK_THROWS_AS(riccati::simplify(bad + zero).eval(0.0), DomainError);
}

TEST_CASE("simplify: pointwise equality on random ASTs") {
    testutil::Rng rng(123);
    for (int i = 0; i < 40; ++i) {
        const Expr e = testutil::random_ast(rng, 3);
        const Expr s = riccati::simplify(e);
        int valid = 0;
        for (int p = 0; p < 100 && valid < 25; ++p) {
            const double t = rng.uniform(-2.0, 2.0);
            double a;
            try {
                a = e.eval(t);
            } catch (const DomainError&) {
                continue;
            }
            if (std::fabs(a) > 1e8) continue;
            const double b = s.eval(t);
            CHECK(std::fabs(a - b) < 1e-12 * (1.0 + std::fabs(a)));
            ++valid;
        }
    }
}

TEST_CASE("print/parse round trip evaluates identically") {
    testutil::Rng rng(456);
    for (int i = 0; i < 40; ++i) {
        const Expr e = testutil::random_ast(rng, 3);
        const Expr back = parse_expr(e.str());
        int valid = 0;
        for (int p = 0; p < 50 && valid < 20; ++p) {
            const double t = rng.uniform(-2.0, 2.0);
            double a;
            try {
                a = e.eval(t);
            } catch (const DomainError&) {
                continue;
            }
            if (std::fabs(a) > 1e8) continue;
            CHECK(back.eval(t) == doctest::Approx(a).epsilon(1e-14));
            CHECK(std::fabs(back.eval(t) - a) < 1e-12 * (1.0 + std::fabs(a)));
            ++valid;
        }
    }
}

TEST_CASE("integral evaluation is safe and consistent across threads") {
    const Expr anti = riccati::antiderivative_from(parse_expr("exp(-t)*cos(t)"), 0.0);
    std::vector<double> points;
    for (int i = 0; i <= 40; ++i) points.push_back(0.05 * i);
    std::vector<double> serial;
    for (double t : points) serial.push_back(anti.eval(t));

    std::vector<std::thread> workers;
    std::array<bool, 4> ok{};
    for (int w = 0; w < 4; ++w) {
        workers.emplace_back([&, w] {
            bool good = true;
            for (std::size_t i = 0; i < points.size(); ++i)
                good = good && anti.eval(points[i]) == serial[i];
            ok[static_cast<std::size_t>(w)] = good;
        });
    }
    for (auto& th : workers) th.join();
    for (bool good : ok) CHECK(good);
}

TEST_CASE("quadrature engine") {
    using riccati::quadrature;
    CHECK(quadrature(Expr::constant(1.0), 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::fabs(quadrature(parse_expr("exp(-t)"), 0.0, 1.0) - (1.0 - std::exp(-1.0))) < 1e-9);
    CHECK(std::fabs(quadrature(parse_expr("sin(t)"), 0.0, M_PI) - 2.0) < 1e-9);
    // Non-convergence reports instead of returning garbage.
    riccati::QuadratureConfig tight;
    tight.abs_tol = 1e-14;
    tight.max_depth = 3;
    CHECK_THROWS_AS(quadrature(parse_expr("1/(0.001 + t^2)"), -1.0, 1.0, tight),
                    riccati::QuadratureError);
}
