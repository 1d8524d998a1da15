#include "riccati/quadrature.hpp"

#include <cmath>

namespace riccati {
namespace {

struct Simpson {
    const std::function<double(double)>& f;
    int max_depth;

    double recurse(double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) const {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
        if (depth >= max_depth)
            throw QuadratureError("adaptive quadrature exceeded max depth before converging");
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureConfig& cfg) {
    if (a == b) return 0.0;
    if (b < a) return -adaptive_simpson(f, b, a, cfg);
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Simpson{f, cfg.max_depth}.recurse(a, b, fa, fm, fb, whole, cfg.abs_tol, 0);
}

double quadrature(const Expr& f, double a, double b, const QuadratureConfig& cfg) {
    return adaptive_simpson([&f](double s) { return f.eval(s); }, a, b, cfg);
}

namespace {
QuadratureConfig g_integral_cfg{};
}

void set_integral_quadrature(const QuadratureConfig& cfg) { g_integral_cfg = cfg; }
QuadratureConfig integral_quadrature() { return g_integral_cfg; }

}  // namespace riccati
