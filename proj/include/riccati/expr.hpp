#ifndef RICCATI_EXPR_HPP
#define RICCATI_EXPR_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace riccati {

/// Raised when an expression is evaluated outside its natural domain
/// (log of a non-positive value, division by zero, sqrt of a negative,
/// fractional power of a non-positive base, non-finite result).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when adaptive quadrature fails to reach the requested tolerance.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by parse_expr; `offset` is the byte position of the error.
struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(const std::string& what, std::size_t off)
        : std::runtime_error(what + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

enum class ExprKind {
    Constant,
    Time,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Integral,  // running integral of the child from a fixed lower limit to t
};

namespace detail {
struct ExprNode;
}

/// Immutable symbolic expression in one real variable t.
///
/// Values are cheap shareable handles over immutable nodes; every operation
/// is a pure function, so Expr is safe to use from any number of threads.
class Expr {
public:
    /// Constant zero.
    Expr();

    static Expr constant(double value);
    static Expr time();
    static Expr integral(const Expr& integrand, double lower);

    static Expr sin(const Expr& x);
    static Expr cos(const Expr& x);
    static Expr tan(const Expr& x);
    static Expr exp(const Expr& x);
    static Expr log(const Expr& x);
    static Expr sqrt(const Expr& x);
    static Expr pow(const Expr& base, const Expr& exponent);

    Expr operator-() const;
    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);

    /// Value at time t. Integral nodes are evaluated by adaptive Simpson
    /// quadrature from their fixed lower limit (abs tol 1e-10, max depth 40).
    double eval(double t) const;
    double operator()(double t) const { return eval(t); }

    ExprKind kind() const;
    /// True when the node is literally a Constant.
    bool is_constant() const;
    /// Payload of a Constant node.
    double constant_value() const;

    /// Structural equality (same tree shape and payloads).
    bool same_structure(const Expr& other) const;

    /// Grammar-compatible text; Integral prints as integral(f, lower),
    /// which is display-only and not part of the input grammar.
    std::string str() const;

    const std::shared_ptr<const detail::ExprNode>& node() const { return node_; }
    explicit Expr(std::shared_ptr<const detail::ExprNode> node);

private:
    std::shared_ptr<const detail::ExprNode> node_;
};

/// Exact symbolic derivative d/dt; the derivative of an Integral node is its
/// integrand. Total on every AST.
Expr differentiate(const Expr& e);

/// Constant folding plus 0/1 identity elimination; pointwise equal to the
/// input wherever both are defined.
Expr simplify(const Expr& e);

/// The running integral of e from t0 to t as an Integral node.
Expr antiderivative_from(const Expr& e, double t0);

double eval_at(const Expr& e, double t);

/// Parse the expression grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | power
///   power  := atom ("^" factor)?          (right-associative)
///   atom   := number | "t" | "pi" | "e" | func "(" expr ")" | "(" expr ")"
///   func   := sin | cos | tan | exp | log | sqrt
/// Unary minus binds looser than "^".
Expr parse_expr(std::string_view text);

}  // namespace riccati

#endif
