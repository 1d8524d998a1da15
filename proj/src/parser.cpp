#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "riccati/expr.hpp"

namespace riccati {
namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expr parse() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_expr() {
        Expr e = parse_term();
        for (;;) {
            if (consume('+')) {
                e = e + parse_term();
            } else if (consume('-')) {
                e = e - parse_term();
            } else {
                return e;
            }
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        for (;;) {
            if (consume('*')) {
                e = e * parse_factor();
            } else if (consume('/')) {
                e = e / parse_factor();
            } else {
                return e;
            }
        }
    }

    // factor := "-" factor | power; unary minus binds looser than "^".
    Expr parse_factor() {
        if (consume('-')) return -parse_factor();
        return parse_power();
    }

    // power := atom ("^" factor)?   ("^" is right-associative)
    Expr parse_power() {
        Expr base = parse_atom();
        if (consume('^')) return Expr::pow(base, parse_factor());
        return base;
    }

    Expr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        fail(std::string("unexpected character '") + c + "'");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && text_[start] == '.')) fail("malformed number");
        // Exponent part only when followed by a digit (optionally signed), so
        // that "2*e" keeps meaning Euler's constant.
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t probe = pos_ + 1;
            if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
            if (probe < text_.size() && std::isdigit(static_cast<unsigned char>(text_[probe]))) {
                pos_ = probe;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            }
        }
        const std::string token(text_.substr(start, pos_ - start));
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(v)) fail("malformed number");
        return Expr::constant(v);
    }

    Expr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "t") return Expr::time();
        if (name == "pi") return Expr::constant(M_PI);
        if (name == "e") return Expr::constant(M_E);

        Expr (*fn)(const Expr&) = nullptr;
        if (name == "sin") fn = &Expr::sin;
        else if (name == "cos") fn = &Expr::cos;
        else if (name == "tan") fn = &Expr::tan;
        else if (name == "exp") fn = &Expr::exp;
        else if (name == "log") fn = &Expr::log;
        else if (name == "sqrt") fn = &Expr::sqrt;
        if (fn == nullptr) {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        if (!consume('(')) fail("expected '(' after function name");
        Expr arg = parse_expr();
        if (!consume(')')) fail("expected ')'");
        return fn(arg);
    }
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace riccati
