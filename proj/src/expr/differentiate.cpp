#include <stdexcept>

#include "pdmsusy/expr.hpp"

namespace pdmsusy {

namespace {

Expr d(const Expr& e) {
    using K = Expr::Kind;
    const auto ch = e.children();
    switch (e.kind()) {
        case K::Constant:
        case K::ImaginaryUnit:
        case K::Parameter:
            return constant(0.0);
        case K::Variable:
            return constant(1.0);
        case K::Negate:
            return -d(ch[0]);
        case K::Conjugate:
            // x is real, so d/dx conj(g) = conj(g').
            return conj(d(ch[0]));
        case K::Add:
            return d(ch[0]) + d(ch[1]);
        case K::Sub:
            return d(ch[0]) - d(ch[1]);
        case K::Mul:
            return d(ch[0]) * ch[1] + ch[0] * d(ch[1]);
        case K::Div: {
            const Expr& f = ch[0];
            const Expr& g = ch[1];
            return d(f) / g - f * d(g) / pow(g, 2.0);
        }
        case K::Pow: {
            const Expr& f = ch[0];
            const Expr& p = ch[1];
            if (!p.depends_on_x()) return p * pow(f, p - 1.0) * d(f);
            return e * (d(p) * apply(Func::Log, f) + p * d(f) / f);
        }
        case K::Call: {
            const Expr& u = ch[0];
            const Expr du = d(u);
            switch (e.func()) {
                case Func::Sin:
                    return apply(Func::Cos, u) * du;
                case Func::Cos:
                    return -(apply(Func::Sin, u) * du);
                case Func::Tan:
                    return pow(apply(Func::Sec, u), 2.0) * du;
                case Func::Sec:
                    return e * apply(Func::Tan, u) * du;
                case Func::Exp:
                    return e * du;
                case Func::Log:
                    return du / u;
                case Func::Sqrt:
                    return du / (2.0 * e);
                case Func::Sinh:
                    return apply(Func::Cosh, u) * du;
                case Func::Cosh:
                    return apply(Func::Sinh, u) * du;
                case Func::Tanh:
                    return (1.0 - pow(e, 2.0)) * du;
            }
        }
    }
    return constant(0.0);
}

}  // namespace

Expr differentiate(const Expr& e, int k) {
    if (k < 1) throw std::invalid_argument("differentiate: order must be >= 1");
    Expr out = e;
    for (int j = 0; j < k; ++j) out = d(out);
    return out;
}

}  // namespace pdmsusy
