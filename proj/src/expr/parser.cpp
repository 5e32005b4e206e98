#include <cctype>
#include <charconv>
#include <numbers>

#include "pdmsusy/error.hpp"
#include "pdmsusy/expr.hpp"

namespace pdmsusy {

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Expr parse_all() {
        skip_ws();
        if (at_end()) throw ParseError("empty expression", pos_);
        Expr e = expr();
        skip_ws();
        if (!at_end()) {
            if (peek() == ')') throw ParseError("unbalanced ')'", pos_);
            throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
        }
        return e;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= src_.size(); }
    char peek() const { return at_end() ? '\0' : src_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = Expr::binary(Expr::Kind::Add, lhs, term());
            } else if (accept('-')) {
                lhs = Expr::binary(Expr::Kind::Sub, lhs, term());
            } else {
                return lhs;
            }
        }
    }

    Expr term() {
        Expr lhs = factor();
        for (;;) {
            if (accept('*')) {
                lhs = Expr::binary(Expr::Kind::Mul, lhs, factor());
            } else if (accept('/')) {
                lhs = Expr::binary(Expr::Kind::Div, lhs, factor());
            } else {
                return lhs;
            }
        }
    }

    Expr factor() {
        if (accept('-')) return Expr::unary(Expr::Kind::Negate, factor());
        Expr base = atom();
        if (accept('^')) return Expr::binary(Expr::Kind::Pow, base, factor());
        return base;
    }

    Expr atom() {
        skip_ws();
        if (at_end()) throw ParseError("unexpected end of input", pos_);
        const char c = peek();
        if (c == '(') {
            const std::size_t open = pos_;
            ++pos_;
            Expr inner = expr();
            if (!accept(')')) throw ParseError("unbalanced '(' opened at offset " + std::to_string(open), pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return word();
        if (c == ')') throw ParseError("unbalanced ')'", pos_);
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    Expr number() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        }
        if (peek() == 'e' || peek() == 'E') {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                pos_ = p;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            }
        }
        double value = 0.0;
        const auto* first = src_.data() + start;
        const auto* last = src_.data() + pos_;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last) throw ParseError("malformed number", start);
        return Expr::constant(Complex(value, 0.0));
    }

    Expr word() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        skip_ws();
        const bool called = peek() == '(';
        if (called) {
            const auto f = func_from_name(name);
            if (!f) throw ParseError("unknown function '" + std::string(name) + "'", start);
            const std::size_t open = pos_;
            ++pos_;
            Expr arg = expr();
            if (!accept(')')) throw ParseError("unbalanced '(' opened at offset " + std::to_string(open), pos_);
            return Expr::call(*f, arg);
        }
        if (func_from_name(name)) {
            throw ParseError("function '" + std::string(name) + "' requires an argument", start);
        }
        if (name == "x") return Expr::variable();
        if (name == "i") return Expr::imaginary_unit();
        if (name == "pi") return Expr::constant(Complex(std::numbers::pi, 0.0));
        return Expr::parameter(std::string(name));
    }
};

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

}  // namespace pdmsusy
