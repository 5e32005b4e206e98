#include "pdmsusy/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "expr_internal.hpp"
#include "pdmsusy/error.hpp"

namespace pdmsusy {

struct Expr::Node {
    Kind kind = Kind::Constant;
    Complex value{};
    std::string name;
    Func func = Func::Sin;
    std::vector<Expr> children;
};

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 10> kFuncNames{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"sec", Func::Sec},
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"sqrt", Func::Sqrt},
    {"sinh", Func::Sinh},
    {"cosh", Func::Cosh},
    {"tanh", Func::Tanh},
}};

const std::string kEmptyName;

bool is_integral(Complex c) {
    return c.imag() == 0.0 && std::isfinite(c.real()) && std::nearbyint(c.real()) == c.real() &&
           std::abs(c.real()) <= 1024.0;
}

}  // namespace

std::string_view func_name(Func f) {
    for (const auto& [name, func] : kFuncNames) {
        if (func == f) return name;
    }
    return "?";
}

std::optional<Func> func_from_name(std::string_view name) {
    for (const auto& [n, func] : kFuncNames) {
        if (n == name) return func;
    }
    return std::nullopt;
}

Expr::Expr() {
    static const auto zero = std::make_shared<const Node>();
    node_ = zero;
}

Expr Expr::constant(Complex value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::variable() {
    static const auto node = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Variable;
        return std::shared_ptr<const Node>(std::move(n));
    }();
    return Expr(node);
}

Expr Expr::imaginary_unit() {
    static const auto node = [] {
        auto n = std::make_shared<Node>();
        n->kind = Kind::ImaginaryUnit;
        return std::shared_ptr<const Node>(std::move(n));
    }();
    return Expr(node);
}

Expr Expr::parameter(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Parameter;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::unary(Kind kind, Expr operand) {
    if (kind != Kind::Negate && kind != Kind::Conjugate) {
        throw std::invalid_argument("Expr::unary: not a unary kind");
    }
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children.push_back(std::move(operand));
    return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
    switch (kind) {
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
        case Kind::Pow:
            break;
        default:
            throw std::invalid_argument("Expr::binary: not a binary kind");
    }
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return Expr(std::move(n));
}

Expr Expr::call(Func func, Expr argument) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->func = func;
    n->children.push_back(std::move(argument));
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
Complex Expr::value() const noexcept { return node_->kind == Kind::Constant ? node_->value : Complex{}; }
const std::string& Expr::name() const noexcept {
    return node_->kind == Kind::Parameter ? node_->name : kEmptyName;
}
Func Expr::func() const noexcept { return node_->func; }
std::span<const Expr> Expr::children() const noexcept { return node_->children; }

bool Expr::depends_on_x() const {
    if (kind() == Kind::Variable) return true;
    for (const auto& c : children()) {
        if (c.depends_on_x()) return true;
    }
    return false;
}

std::size_t Expr::size() const {
    std::size_t n = 1;
    for (const auto& c : children()) n += c.size();
    return n;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Expr::Kind::Constant:
            return a.value() == b.value();
        case Expr::Kind::Variable:
        case Expr::Kind::ImaginaryUnit:
            return true;
        case Expr::Kind::Parameter:
            return a.name() == b.name();
        case Expr::Kind::Call:
            if (a.func() != b.func()) return false;
            break;
        default:
            break;
    }
    const auto ca = a.children();
    const auto cb = b.children();
    if (ca.size() != cb.size()) return false;
    for (std::size_t k = 0; k < ca.size(); ++k) {
        if (!(ca[k] == cb[k])) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength used to decide where parentheses are needed.
constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecNeg = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    std::string s(buf.data(), end);
    return s;
}

struct Printed {
    std::string text;
    int prec;
};

Printed print_constant(Complex c) {
    const double re = c.real();
    const double im = c.imag();
    if (im == 0.0) {
        if (re == std::numbers::pi) return {"pi", kPrecAtom};
        if (std::signbit(re)) return {"-" + format_number(-re), kPrecNeg};
        return {format_number(re), kPrecAtom};
    }
    if (re == 0.0) {
        if (im == 1.0) return {"i", kPrecAtom};
        if (im == -1.0) return {"-i", kPrecNeg};
        if (im < 0.0) return {"-" + format_number(-im) + "*i", kPrecMul};
        return {format_number(im) + "*i", kPrecMul};
    }
    std::string s = "(" + format_number(re) + (im < 0.0 ? "-" : "+") + format_number(std::abs(im)) + "*i)";
    return {s, kPrecAtom};
}

Printed print(const Expr& e);

std::string wrap(const Printed& p, bool parens) { return parens ? "(" + p.text + ")" : p.text; }

Printed print(const Expr& e) {
    using K = Expr::Kind;
    const auto ch = e.children();
    switch (e.kind()) {
        case K::Constant:
            return print_constant(e.value());
        case K::Variable:
            return {"x", kPrecAtom};
        case K::ImaginaryUnit:
            return {"i", kPrecAtom};
        case K::Parameter:
            return {e.name(), kPrecAtom};
        case K::Negate: {
            const auto a = print(ch[0]);
            return {"-" + wrap(a, a.prec < kPrecNeg), kPrecNeg};
        }
        case K::Conjugate:
            return {"conj(" + print(ch[0]).text + ")", kPrecAtom};
        case K::Call:
            return {std::string(func_name(e.func())) + "(" + print(ch[0]).text + ")", kPrecAtom};
        case K::Add:
        case K::Sub: {
            const auto a = print(ch[0]);
            const auto b = print(ch[1]);
            const char* op = e.kind() == K::Add ? "+" : "-";
            return {wrap(a, a.prec < kPrecAdd) + op + wrap(b, b.prec <= kPrecAdd), kPrecAdd};
        }
        case K::Mul:
        case K::Div: {
            const auto a = print(ch[0]);
            const auto b = print(ch[1]);
            const char* op = e.kind() == K::Mul ? "*" : "/";
            return {wrap(a, a.prec < kPrecMul) + op + wrap(b, b.prec <= kPrecMul), kPrecMul};
        }
        case K::Pow: {
            const auto a = print(ch[0]);
            const auto b = print(ch[1]);
            return {wrap(a, a.prec <= kPrecPow) + "^" + wrap(b, b.prec < kPrecNeg), kPrecPow};
        }
    }
    return {"?", kPrecAtom};
}

}  // namespace

std::string Expr::to_string() const { return print(*this).text; }

// ---------------------------------------------------------------------------
// Simplifying constructors

Expr constant(Complex value) { return Expr::constant(value); }
Expr var_x() { return Expr::variable(); }
Expr imag_i() { return Expr::imaginary_unit(); }
Expr param(std::string name) { return Expr::parameter(std::move(name)); }

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return constant(a.value() + b.value());
    if (a.is_constant(0.0)) return b;
    if (b.is_constant(0.0)) return a;
    return Expr::binary(Expr::Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return constant(a.value() - b.value());
    if (b.is_constant(0.0)) return a;
    if (a.is_constant(0.0)) return -b;
    if (a == b) return constant(0.0);
    return Expr::binary(Expr::Kind::Sub, a, b);
}

Expr operator-(const Expr& a) {
    if (a.is_constant()) return constant(-a.value());
    if (a.kind() == Expr::Kind::Negate) return a.children()[0];
    return Expr::unary(Expr::Kind::Negate, a);
}

namespace {

// Splits f^c into (f, c) with c constant; any other expression is f^1.
std::pair<Expr, Complex> as_power(const Expr& e) {
    if (e.kind() == Expr::Kind::Pow && e.children()[1].is_constant()) {
        return {e.children()[0], e.children()[1].value()};
    }
    return {e, Complex(1.0, 0.0)};
}

}  // namespace

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant()) return constant(a.value() * b.value());
    if (a.is_constant(0.0) || b.is_constant(0.0)) return constant(0.0);
    if (a.is_constant(1.0)) return b;
    if (b.is_constant(1.0)) return a;
    if (a.is_constant(-1.0)) return -b;
    if (b.is_constant(-1.0)) return -a;
    // Constants lead a product so that adjacent constants fold.
    if (b.is_constant()) return b * a;
    if (a.is_constant() && b.kind() == Expr::Kind::Mul && b.children()[0].is_constant()) {
        return constant(a.value() * b.children()[0].value()) * b.children()[1];
    }
    if (!a.is_constant()) {
        const auto [fa, ca] = as_power(a);
        const auto [fb, cb] = as_power(b);
        if (fa == fb && is_integral(ca) && is_integral(cb)) return pow(fa, constant(ca + cb));
    }
    return Expr::binary(Expr::Kind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
    if (a.is_constant() && b.is_constant() && b.value() != 0.0) return constant(a.value() / b.value());
    if (a.is_constant(0.0)) return constant(0.0);
    if (b.is_constant(1.0)) return a;
    if (b.is_constant(-1.0)) return -a;
    return Expr::binary(Expr::Kind::Div, a, b);
}

Expr pow(const Expr& base, const Expr& exponent) {
    if (exponent.is_constant(0.0)) return constant(1.0);
    if (exponent.is_constant(1.0)) return base;
    if (base.is_constant(1.0)) return constant(1.0);
    if (base.is_constant() && exponent.is_constant()) {
        const Complex b = base.value();
        const Complex p = exponent.value();
        if (is_integral(p) || (b.imag() == 0.0 && b.real() > 0.0 && p.imag() == 0.0)) {
            try {
                return constant(detail::pow_value(b, p));
            } catch (const NumericalError&) {
                // 0^-n stays symbolic so the pole surfaces at evaluation.
            }
        }
    }
    if (base.kind() == Expr::Kind::Pow && exponent.is_constant()) {
        const auto& inner = base.children()[1];
        if (inner.is_constant() && is_integral(inner.value()) && is_integral(exponent.value())) {
            return pow(base.children()[0], constant(inner.value() * exponent.value()));
        }
    }
    return Expr::binary(Expr::Kind::Pow, base, exponent);
}

Expr apply(Func f, const Expr& argument) {
    if (argument.is_constant()) {
        try {
            return constant(detail::call_value(f, argument.value()));
        } catch (const NumericalError&) {
            // Leave poles in place; evaluation reports them.
        }
    }
    return Expr::call(f, argument);
}

Expr conj(const Expr& a) {
    // Push-down uses raw constructors: regrouping constants would change
    // rounding, and the PT image must evaluate to conj(f(-x)) bit for bit.
    using K = Expr::Kind;
    const auto ch = a.children();
    switch (a.kind()) {
        case K::Constant:
            return constant(std::conj(a.value()));
        case K::Variable:
            return a;
        case K::ImaginaryUnit:
            return Expr::unary(K::Negate, a);
        case K::Negate:
            return Expr::unary(K::Negate, conj(ch[0]));
        case K::Conjugate:
            return ch[0];
        case K::Add:
        case K::Sub:
        case K::Mul:
            return Expr::binary(a.kind(), conj(ch[0]), conj(ch[1]));
        case K::Pow:
            // Integer powers evaluate by repeated multiplication, which
            // commutes with conjugation.
            if (ch[1].is_constant() && is_integral(ch[1].value())) {
                return Expr::binary(K::Pow, conj(ch[0]), ch[1]);
            }
            break;
        default:
            break;
    }
    return Expr::unary(K::Conjugate, a);
}

Expr simplify(const Expr& e) {
    using K = Expr::Kind;
    const auto ch = e.children();
    switch (e.kind()) {
        case K::Constant:
        case K::Variable:
        case K::ImaginaryUnit:
        case K::Parameter:
            return e;
        case K::Negate:
            return -simplify(ch[0]);
        case K::Conjugate:
            return Expr::unary(K::Conjugate, simplify(ch[0]));
        case K::Add:
            return simplify(ch[0]) + simplify(ch[1]);
        case K::Sub:
            return simplify(ch[0]) - simplify(ch[1]);
        case K::Mul:
            return simplify(ch[0]) * simplify(ch[1]);
        case K::Div:
            return simplify(ch[0]) / simplify(ch[1]);
        case K::Pow:
            return pow(simplify(ch[0]), simplify(ch[1]));
        case K::Call:
            return apply(e.func(), simplify(ch[0]));
    }
    return e;
}

Expr substitute_x(const Expr& e, const Expr& replacement) {
    using K = Expr::Kind;
    const auto ch = e.children();
    switch (e.kind()) {
        case K::Variable:
            return replacement;
        case K::Constant:
        case K::ImaginaryUnit:
        case K::Parameter:
            return e;
        case K::Negate:
        case K::Conjugate:
            return Expr::unary(e.kind(), substitute_x(ch[0], replacement));
        case K::Call:
            return Expr::call(e.func(), substitute_x(ch[0], replacement));
        default:
            return Expr::binary(e.kind(), substitute_x(ch[0], replacement), substitute_x(ch[1], replacement));
    }
}

ParamEnv ParamEnv::with(const std::string& name, Complex value) const {
    auto copy = values_;
    copy[name] = value;
    return ParamEnv(std::move(copy));
}

Complex ParamEnv::at(const std::string& name) const {
    const auto it = values_.find(name);
    if (it == values_.end()) throw NumericalError("unbound parameter '" + name + "'");
    return it->second;
}

}  // namespace pdmsusy
