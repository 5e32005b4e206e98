#include <cmath>

#include "expr_internal.hpp"
#include "pdmsusy/error.hpp"

namespace pdmsusy {

namespace detail {

namespace {

// |cos z| below this is treated as a pole of sec and tan; cos(pi/2) rounds
// to 6e-17 in double precision rather than to zero.
constexpr double kTrigPoleThreshold = 1e-13;

Complex integer_power(Complex base, long n) {
    if (n < 0) {
        if (base == 0.0) throw NumericalError("pole: zero raised to a negative power");
        return 1.0 / integer_power(base, -n);
    }
    Complex result(1.0, 0.0);
    Complex factor = base;
    while (n > 0) {
        if (n & 1) result *= factor;
        n >>= 1;
        if (n > 0) factor *= factor;
    }
    return result;
}

}  // namespace

Complex pow_value(Complex base, Complex exponent) {
    if (exponent.imag() == 0.0) {
        const double p = exponent.real();
        if (std::nearbyint(p) == p && std::abs(p) <= 1024.0) return integer_power(base, static_cast<long>(p));
        if (base.imag() == 0.0 && base.real() > 0.0) return Complex(std::pow(base.real(), p), 0.0);
    }
    if (base == 0.0) {
        if (exponent.real() > 0.0) return Complex(0.0, 0.0);
        throw NumericalError("pole: zero raised to a non-positive power");
    }
    return std::pow(base, exponent);
}

Complex call_value(Func f, Complex z) {
    switch (f) {
        case Func::Sin:
            return std::sin(z);
        case Func::Cos:
            return std::cos(z);
        case Func::Tan: {
            const Complex c = std::cos(z);
            if (std::abs(c) < kTrigPoleThreshold) throw NumericalError("pole of tan");
            return std::sin(z) / c;
        }
        case Func::Sec: {
            const Complex c = std::cos(z);
            if (std::abs(c) < kTrigPoleThreshold) throw NumericalError("pole of sec");
            return 1.0 / c;
        }
        case Func::Exp:
            return std::exp(z);
        case Func::Log:
            if (z == 0.0) throw NumericalError("pole of log");
            return std::log(z);
        case Func::Sqrt:
            return std::sqrt(z);
        case Func::Sinh:
            return std::sinh(z);
        case Func::Cosh:
            return std::cosh(z);
        case Func::Tanh:
            return std::tanh(z);
    }
    return {};
}

}  // namespace detail

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

[[noreturn]] void fail(const Expr& e, double x, const std::string& what) {
    throw NumericalError(what + " in '" + e.to_string() + "' at x=" + std::to_string(x));
}

Complex eval(const Expr& e, double x, const ParamEnv& env) {
    using K = Expr::Kind;
    const auto ch = e.children();
    Complex r;
    switch (e.kind()) {
        case K::Constant:
            return e.value();
        case K::Variable:
            return Complex(x, 0.0);
        case K::ImaginaryUnit:
            return Complex(0.0, 1.0);
        case K::Parameter:
            if (!env.contains(e.name())) fail(e, x, "unbound parameter '" + e.name() + "'");
            return env.at(e.name());
        case K::Negate:
            return -eval(ch[0], x, env);
        case K::Conjugate:
            return std::conj(eval(ch[0], x, env));
        case K::Add:
            r = eval(ch[0], x, env) + eval(ch[1], x, env);
            break;
        case K::Sub:
            r = eval(ch[0], x, env) - eval(ch[1], x, env);
            break;
        case K::Mul:
            r = eval(ch[0], x, env) * eval(ch[1], x, env);
            break;
        case K::Div: {
            const Complex num = eval(ch[0], x, env);
            const Complex den = eval(ch[1], x, env);
            if (den == 0.0) fail(e, x, "division by zero");
            r = num / den;
            break;
        }
        case K::Pow: {
            const Complex b = eval(ch[0], x, env);
            const Complex p = eval(ch[1], x, env);
            try {
                r = detail::pow_value(b, p);
            } catch (const NumericalError& err) {
                fail(e, x, err.what());
            }
            break;
        }
        case K::Call: {
            const Complex z = eval(ch[0], x, env);
            try {
                r = detail::call_value(e.func(), z);
            } catch (const NumericalError& err) {
                fail(e, x, err.what());
            }
            break;
        }
    }
    if (!finite(r)) fail(e, x, "non-finite value");
    return r;
}

}  // namespace

Complex evaluate(const Expr& e, double x, const ParamEnv& env) { return eval(e, x, env); }

std::vector<Complex> evaluate(const Expr& e, std::span<const double> xs, const ParamEnv& env) {
    std::vector<Complex> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(eval(e, x, env));
    return out;
}

}  // namespace pdmsusy
