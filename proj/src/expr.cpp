#include "riccati/expr.hpp"

#include <charconv>
#include <cmath>
#include <mutex>
#include <unordered_map>
#include <utility>

#include "riccati/quadrature.hpp"

namespace riccati {
namespace detail {

// Exact-key memo for Integral nodes. A hit returns the value a fresh
// full-range integration at the same t would produce (evaluation is a
// deterministic pure function of t), so results do not depend on the cache.
struct IntegralMemo {
    std::mutex mu;
    std::unordered_map<double, double> values;
};

struct ExprNode {
    ExprKind kind;
    double value = 0.0;  // Constant payload; Integral lower limit
    std::shared_ptr<const ExprNode> a;
    std::shared_ptr<const ExprNode> b;
    std::unique_ptr<IntegralMemo> memo;  // Integral nodes only
};

namespace {

constexpr std::size_t kMemoCap = 16384;

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(ExprKind kind, double value, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->value = value;
    n->a = std::move(a);
    n->b = std::move(b);
    if (kind == ExprKind::Integral) n->memo = std::make_unique<IntegralMemo>();
    return n;
}

double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " produced a non-finite value");
    return v;
}

// Repeated multiplication for integer exponents (valid for any base sign).
double int_pow(double base, long long n) {
    if (n < 0) {
        if (base == 0.0) throw DomainError("zero raised to a negative power");
        return 1.0 / int_pow(base, -n);
    }
    double acc = 1.0, f = base;
    while (n > 0) {
        if (n & 1) acc *= f;
        f *= f;
        n >>= 1;
    }
    return acc;
}

bool integral_exponent(const ExprNode& e, long long* out) {
    if (e.kind != ExprKind::Constant) return false;
    const double v = e.value;
    if (v != std::nearbyint(v) || std::fabs(v) > 1e9) return false;
    *out = static_cast<long long>(v);
    return true;
}

double eval_node(const ExprNode& n, double t);

double eval_integral(const ExprNode& n, double t) {
    {
        std::lock_guard<std::mutex> lock(n.memo->mu);
        auto it = n.memo->values.find(t);
        if (it != n.memo->values.end()) return it->second;
    }
    const ExprNode* integrand = n.a.get();
    const double v = adaptive_simpson([integrand](double s) { return eval_node(*integrand, s); },
                                      n.value, t, integral_quadrature());
    std::lock_guard<std::mutex> lock(n.memo->mu);
    if (n.memo->values.size() < kMemoCap) n.memo->values.emplace(t, v);
    return v;
}

double eval_node(const ExprNode& n, double t) {
    switch (n.kind) {
        case ExprKind::Constant: return n.value;
        case ExprKind::Time: return t;
        case ExprKind::Add: return eval_node(*n.a, t) + eval_node(*n.b, t);
        case ExprKind::Sub: return eval_node(*n.a, t) - eval_node(*n.b, t);
        case ExprKind::Mul: return eval_node(*n.a, t) * eval_node(*n.b, t);
        case ExprKind::Div: {
            const double num = eval_node(*n.a, t);
            const double den = eval_node(*n.b, t);
            if (den == 0.0) throw DomainError("division by zero");
            return num / den;
        }
        case ExprKind::Pow: {
            long long k = 0;
            if (integral_exponent(*n.b, &k)) return int_pow(eval_node(*n.a, t), k);
            const double base = eval_node(*n.a, t);
            const double expo = eval_node(*n.b, t);
            if (base <= 0.0) throw DomainError("non-integer power of a non-positive base");
            return std::pow(base, expo);
        }
        case ExprKind::Neg: return -eval_node(*n.a, t);
        case ExprKind::Sin: return std::sin(eval_node(*n.a, t));
        case ExprKind::Cos: return std::cos(eval_node(*n.a, t));
        case ExprKind::Tan: return std::tan(eval_node(*n.a, t));
        case ExprKind::Exp: return require_finite(std::exp(eval_node(*n.a, t)), "exp");
        case ExprKind::Log: {
            const double v = eval_node(*n.a, t);
            if (v <= 0.0) throw DomainError("log of a non-positive value");
            return std::log(v);
        }
        case ExprKind::Sqrt: {
            const double v = eval_node(*n.a, t);
            if (v < 0.0) throw DomainError("sqrt of a negative value");
            return std::sqrt(v);
        }
        case ExprKind::Integral: return eval_integral(n, t);
    }
    throw std::logic_error("eval_node: unreachable");
}

bool same_node(const ExprNode& x, const ExprNode& y) {
    if (&x == &y) return true;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case ExprKind::Constant: return x.value == y.value;
        case ExprKind::Time: return true;
        case ExprKind::Integral:
            return x.value == y.value && same_node(*x.a, *y.a);
        default: break;
    }
    if (static_cast<bool>(x.a) != static_cast<bool>(y.a)) return false;
    if (static_cast<bool>(x.b) != static_cast<bool>(y.b)) return false;
    if (x.a && !same_node(*x.a, *y.a)) return false;
    if (x.b && !same_node(*x.b, *y.b)) return false;
    return true;
}

bool is_const(const NodePtr& n, double v) { return n->kind == ExprKind::Constant && n->value == v; }

NodePtr constant_node(double v) { return make_node(ExprKind::Constant, v); }

NodePtr simplify_node(const NodePtr& n);

NodePtr rebuild(const ExprNode& n, NodePtr a, NodePtr b) {
    return make_node(n.kind, n.value, std::move(a), std::move(b));
}

NodePtr simplify_node(const NodePtr& n) {
    NodePtr a = n->a ? simplify_node(n->a) : nullptr;
    NodePtr b = n->b ? simplify_node(n->b) : nullptr;

    switch (n->kind) {
        case ExprKind::Constant:
        case ExprKind::Time:
            return n;
        case ExprKind::Integral:
            if (is_const(a, 0.0)) return constant_node(0.0);
            return same_node(*a, *n->a) ? n : rebuild(*n, a, nullptr);
        default: break;
    }

    // Constant folding: every child constant and evaluation well defined.
    const bool const_children =
        a->kind == ExprKind::Constant && (!b || b->kind == ExprKind::Constant);
    if (const_children) {
        const NodePtr folded = rebuild(*n, a, b);
        try {
            const double v = eval_node(*folded, 0.0);
            if (std::isfinite(v)) return constant_node(v);
        } catch (const DomainError&) {
            // leave unfolded; evaluation will report the domain error
        }
        return folded;
    }

    switch (n->kind) {
        case ExprKind::Add:
            if (is_const(a, 0.0)) return b;
            if (is_const(b, 0.0)) return a;
            break;
        case ExprKind::Sub:
            if (is_const(b, 0.0)) return a;
            if (is_const(a, 0.0)) return simplify_node(make_node(ExprKind::Neg, 0.0, b));
            if (same_node(*a, *b)) return constant_node(0.0);
            break;
        case ExprKind::Mul:
            if (is_const(a, 0.0) || is_const(b, 0.0)) return constant_node(0.0);
            if (is_const(a, 1.0)) return b;
            if (is_const(b, 1.0)) return a;
            break;
        case ExprKind::Div:
            if (is_const(a, 0.0) && !is_const(b, 0.0)) return constant_node(0.0);
            if (is_const(b, 1.0)) return a;
            break;
        case ExprKind::Pow:
            if (is_const(b, 1.0)) return a;
            if (is_const(b, 0.0)) return constant_node(1.0);
            if (is_const(a, 1.0)) return constant_node(1.0);
            break;
        case ExprKind::Neg:
            if (a->kind == ExprKind::Neg) return a->a;
            if (a->kind == ExprKind::Constant) return constant_node(-a->value);
            break;
        default: break;
    }

    if (same_node(*a, *n->a) && (!b || same_node(*b, *n->b))) return n;
    return rebuild(*n, a, b);
}

NodePtr diff_node(const NodePtr& n);

NodePtr add(NodePtr x, NodePtr y) { return make_node(ExprKind::Add, 0.0, std::move(x), std::move(y)); }
NodePtr sub(NodePtr x, NodePtr y) { return make_node(ExprKind::Sub, 0.0, std::move(x), std::move(y)); }
NodePtr mul(NodePtr x, NodePtr y) { return make_node(ExprKind::Mul, 0.0, std::move(x), std::move(y)); }
NodePtr divn(NodePtr x, NodePtr y) { return make_node(ExprKind::Div, 0.0, std::move(x), std::move(y)); }
NodePtr un(ExprKind k, NodePtr x) { return make_node(k, 0.0, std::move(x)); }

NodePtr diff_node(const NodePtr& n) {
    switch (n->kind) {
        case ExprKind::Constant: return constant_node(0.0);
        case ExprKind::Time: return constant_node(1.0);
        case ExprKind::Add: return add(diff_node(n->a), diff_node(n->b));
        case ExprKind::Sub: return sub(diff_node(n->a), diff_node(n->b));
        case ExprKind::Mul:
            return add(mul(diff_node(n->a), n->b), mul(n->a, diff_node(n->b)));
        case ExprKind::Div:
            // (f/g)' = (f'g - f g') / g^2
            return divn(sub(mul(diff_node(n->a), n->b), mul(n->a, diff_node(n->b))),
                        make_node(ExprKind::Pow, 0.0, n->b, constant_node(2.0)));
        case ExprKind::Pow: {
            long long k = 0;
            if (integral_exponent(*n->b, &k)) {
                // d f^k = k f^(k-1) f'
                return mul(constant_node(static_cast<double>(k)),
                           mul(make_node(ExprKind::Pow, 0.0, n->a,
                                         constant_node(static_cast<double>(k - 1))),
                               diff_node(n->a)));
            }
            // d f^g = f^g (g' log f + g f'/f)
            return mul(make_node(ExprKind::Pow, 0.0, n->a, n->b),
                       add(mul(diff_node(n->b), un(ExprKind::Log, n->a)),
                           mul(n->b, divn(diff_node(n->a), n->a))));
        }
        case ExprKind::Neg: return un(ExprKind::Neg, diff_node(n->a));
        case ExprKind::Sin: return mul(un(ExprKind::Cos, n->a), diff_node(n->a));
        case ExprKind::Cos: return un(ExprKind::Neg, mul(un(ExprKind::Sin, n->a), diff_node(n->a)));
        case ExprKind::Tan:
            // d tan f = (1 + tan^2 f) f'
            return mul(add(constant_node(1.0),
                           make_node(ExprKind::Pow, 0.0, un(ExprKind::Tan, n->a), constant_node(2.0))),
                       diff_node(n->a));
        case ExprKind::Exp: return mul(un(ExprKind::Exp, n->a), diff_node(n->a));
        case ExprKind::Log: return divn(diff_node(n->a), n->a);
        case ExprKind::Sqrt:
            return divn(diff_node(n->a), mul(constant_node(2.0), un(ExprKind::Sqrt, n->a)));
        case ExprKind::Integral: return n->a;
    }
    throw std::logic_error("diff_node: unreachable");
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Operator precedence for printing: 1 additive, 2 multiplicative (and unary
// minus), 3 power, 4 atom.
int precedence(const ExprNode& n) {
    switch (n.kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 2;
        case ExprKind::Pow: return 3;
        case ExprKind::Constant: return n.value < 0.0 ? 2 : 4;
        default: return 4;
    }
}

void print_node(const ExprNode& n, std::string& out);

void print_wrapped(const ExprNode& n, int min_prec, std::string& out) {
    if (precedence(n) < min_prec) {
        out += '(';
        print_node(n, out);
        out += ')';
    } else {
        print_node(n, out);
    }
}

// An exponent must reparse as a single `factor`: a power/atom, or a chain of
// unary minuses over one.
bool exponent_needs_parens(const ExprNode& n) {
    if (n.kind == ExprKind::Neg) return exponent_needs_parens(*n.a);
    return precedence(n) < 3;
}

void print_exponent(const ExprNode& n, std::string& out) {
    if (exponent_needs_parens(n)) {
        out += '(';
        print_node(n, out);
        out += ')';
    } else {
        print_node(n, out);
    }
}

void print_node(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case ExprKind::Constant: out += format_double(n.value); return;
        case ExprKind::Time: out += 't'; return;
        case ExprKind::Add:
            print_wrapped(*n.a, 1, out);
            out += " + ";
            print_wrapped(*n.b, 2, out);
            return;
        case ExprKind::Sub:
            print_wrapped(*n.a, 1, out);
            out += " - ";
            print_wrapped(*n.b, 2, out);
            return;
        case ExprKind::Mul:
            print_wrapped(*n.a, 2, out);
            out += "*";
            print_wrapped(*n.b, 3, out);
            return;
        case ExprKind::Div:
            print_wrapped(*n.a, 2, out);
            out += "/";
            print_wrapped(*n.b, 3, out);
            return;
        case ExprKind::Pow:
            print_wrapped(*n.a, 4, out);
            out += "^";
            print_exponent(*n.b, out);
            return;
        case ExprKind::Neg:
            out += '-';
            print_wrapped(*n.a, 2, out);
            return;
        case ExprKind::Sin: out += "sin("; break;
        case ExprKind::Cos: out += "cos("; break;
        case ExprKind::Tan: out += "tan("; break;
        case ExprKind::Exp: out += "exp("; break;
        case ExprKind::Log: out += "log("; break;
        case ExprKind::Sqrt: out += "sqrt("; break;
        case ExprKind::Integral:
            out += "integral(";
            print_node(*n.a, out);
            out += ", ";
            out += format_double(n.value);
            out += ')';
            return;
    }
    print_node(*n.a, out);
    out += ')';
}

}  // namespace
}  // namespace detail

using detail::make_node;

Expr::Expr() : node_(detail::make_node(ExprKind::Constant, 0.0)) {}
Expr::Expr(std::shared_ptr<const detail::ExprNode> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) { return Expr(make_node(ExprKind::Constant, value)); }
Expr Expr::time() { return Expr(make_node(ExprKind::Time, 0.0)); }

Expr Expr::integral(const Expr& integrand, double lower) {
    return Expr(make_node(ExprKind::Integral, lower, integrand.node_));
}

Expr Expr::sin(const Expr& x) { return Expr(make_node(ExprKind::Sin, 0.0, x.node_)); }
Expr Expr::cos(const Expr& x) { return Expr(make_node(ExprKind::Cos, 0.0, x.node_)); }
Expr Expr::tan(const Expr& x) { return Expr(make_node(ExprKind::Tan, 0.0, x.node_)); }
Expr Expr::exp(const Expr& x) { return Expr(make_node(ExprKind::Exp, 0.0, x.node_)); }
Expr Expr::log(const Expr& x) { return Expr(make_node(ExprKind::Log, 0.0, x.node_)); }
Expr Expr::sqrt(const Expr& x) { return Expr(make_node(ExprKind::Sqrt, 0.0, x.node_)); }
Expr Expr::pow(const Expr& base, const Expr& exponent) {
    return Expr(make_node(ExprKind::Pow, 0.0, base.node_, exponent.node_));
}

Expr Expr::operator-() const { return Expr(make_node(ExprKind::Neg, 0.0, node_)); }
Expr operator+(const Expr& a, const Expr& b) { return Expr(make_node(ExprKind::Add, 0.0, a.node_, b.node_)); }
Expr operator-(const Expr& a, const Expr& b) { return Expr(make_node(ExprKind::Sub, 0.0, a.node_, b.node_)); }
Expr operator*(const Expr& a, const Expr& b) { return Expr(make_node(ExprKind::Mul, 0.0, a.node_, b.node_)); }
Expr operator/(const Expr& a, const Expr& b) { return Expr(make_node(ExprKind::Div, 0.0, a.node_, b.node_)); }

double Expr::eval(double t) const {
    const double v = detail::eval_node(*node_, t);
    if (!std::isfinite(v)) throw DomainError("expression evaluated to a non-finite value");
    return v;
}

ExprKind Expr::kind() const { return node_->kind; }
bool Expr::is_constant() const { return node_->kind == ExprKind::Constant; }

double Expr::constant_value() const {
    if (!is_constant()) throw std::logic_error("constant_value on a non-constant expression");
    return node_->value;
}

bool Expr::same_structure(const Expr& other) const { return detail::same_node(*node_, *other.node_); }

std::string Expr::str() const {
    std::string out;
    detail::print_node(*node_, out);
    return out;
}

Expr differentiate(const Expr& e) { return simplify(Expr(detail::diff_node(e.node()))); }
Expr simplify(const Expr& e) { return Expr(detail::simplify_node(e.node())); }
Expr antiderivative_from(const Expr& e, double t0) { return Expr::integral(e, t0); }
double eval_at(const Expr& e, double t) { return e.eval(t); }

}  // namespace riccati
