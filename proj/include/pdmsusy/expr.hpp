#pragma once

// Expression trees for complex-valued functions of one real variable x.
//
// An Expr is an immutable, reference-counted AST. Subtrees are shared, so
// copying is cheap and concurrent evaluation from many threads is safe.
//
// Grammar accepted by parse():
//
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := "-" factor | atom ("^" factor)?
//   atom   := number | "x" | "i" | "pi" | identifier
//           | func "(" expr ")" | "(" expr ")"
//   func   := sin | cos | tan | sec | exp | log | sqrt | sinh | cosh | tanh
//
// "^" is right-associative and binds tighter than unary minus, so -x^2 is
// -(x^2). Identifiers other than the reserved words name parameters, which
// are bound at evaluation time through a ParamEnv.

#include <complex>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pdmsusy {

using Complex = std::complex<double>;

enum class Func { Sin, Cos, Tan, Sec, Exp, Log, Sqrt, Sinh, Cosh, Tanh };

std::string_view func_name(Func f);
std::optional<Func> func_from_name(std::string_view name);

class Expr {
public:
    enum class Kind {
        Constant,
        Variable,
        ImaginaryUnit,
        Parameter,
        Negate,
        Conjugate,  // produced by pt_image only; not part of the input grammar
        Add,
        Sub,
        Mul,
        Div,
        Pow,
        Call,
    };

    /// The constant zero.
    Expr();

    // Raw constructors: build exactly the requested node, no simplification.
    static Expr constant(Complex value);
    static Expr variable();
    static Expr imaginary_unit();
    static Expr parameter(std::string name);
    static Expr unary(Kind kind, Expr operand);
    static Expr binary(Kind kind, Expr lhs, Expr rhs);
    static Expr call(Func func, Expr argument);

    Kind kind() const noexcept;
    /// Value of a Constant node; zero for any other kind.
    Complex value() const noexcept;
    /// Name of a Parameter node; empty for any other kind.
    const std::string& name() const noexcept;
    /// Function of a Call node.
    Func func() const noexcept;
    /// Children: one for Negate/Conjugate/Call, two for binary nodes.
    std::span<const Expr> children() const noexcept;

    bool is_constant() const noexcept { return kind() == Kind::Constant; }
    bool is_constant(Complex v) const noexcept { return is_constant() && value() == v; }
    bool depends_on_x() const;

    /// Number of nodes counted as a tree (shared subtrees counted per use).
    std::size_t size() const;

    std::string to_string() const;

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Simplifying constructors. Rules are local and conservative: constant
// folding, additive/multiplicative identities, 0*f -> 0, f^1 -> f, f^0 -> 1,
// f*f -> f^2, -(-f) -> f.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, const Expr& exponent);
Expr apply(Func f, const Expr& argument);
Expr conj(const Expr& a);

Expr constant(Complex value);
inline Expr constant(double value) { return constant(Complex(value, 0.0)); }
Expr var_x();
Expr imag_i();
Expr param(std::string name);

inline Expr operator+(const Expr& a, double b) { return a + constant(b); }
inline Expr operator+(double a, const Expr& b) { return constant(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - constant(b); }
inline Expr operator-(double a, const Expr& b) { return constant(a) - b; }
inline Expr operator*(const Expr& a, double b) { return a * constant(b); }
inline Expr operator*(double a, const Expr& b) { return constant(a) * b; }
inline Expr operator*(Complex a, const Expr& b) { return constant(a) * b; }
inline Expr operator/(const Expr& a, double b) { return a / constant(b); }
inline Expr operator/(double a, const Expr& b) { return constant(a) / b; }
inline Expr pow(const Expr& base, double exponent) { return pow(base, constant(exponent)); }

/// Parses `source`. Throws ParseError with the byte offset on failure.
Expr parse(std::string_view source);

/// Rebuilds `e` bottom-up through the simplifying constructors.
Expr simplify(const Expr& e);

/// Exact symbolic k-th derivative with respect to x (k >= 1).
Expr differentiate(const Expr& e, int k = 1);

/// Replaces every occurrence of x by `replacement`.
Expr substitute_x(const Expr& e, const Expr& replacement);

/// Immutable map from parameter names to complex values.
class ParamEnv {
public:
    ParamEnv() = default;
    ParamEnv(std::initializer_list<std::pair<const std::string, Complex>> values) : values_(values) {}
    explicit ParamEnv(std::map<std::string, Complex> values) : values_(std::move(values)) {}

    /// Returns a copy with `name` bound (or rebound) to `value`.
    ParamEnv with(const std::string& name, Complex value) const;

    bool contains(const std::string& name) const { return values_.count(name) != 0; }
    /// Throws NumericalError for unbound names; there is no default value.
    Complex at(const std::string& name) const;
    const std::map<std::string, Complex>& values() const noexcept { return values_; }

private:
    std::map<std::string, Complex> values_;
};

/// Evaluates `e` at x. Throws NumericalError naming the offending
/// subexpression on unbound parameters, poles, and non-finite values.
Complex evaluate(const Expr& e, double x, const ParamEnv& env = {});

std::vector<Complex> evaluate(const Expr& e, std::span<const double> xs, const ParamEnv& env = {});

}  // namespace pdmsusy
