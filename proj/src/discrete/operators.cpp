#include "pdmsusy/discrete/operators.hpp"

#include <vector>

#include "pdmsusy/error.hpp"

namespace pdmsusy::discrete {

namespace {

// First and second central differences; boundary rows left zero.
ComplexMatrix derivative_matrix(int order, const Grid& g) {
    const int n = g.points();
    const double h = g.spacing();
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    if (order == 0) {
        for (int i = 1; i + 1 < n; ++i) d(i, i) = 1.0;
        return d;
    }
    if (order == 1) {
        for (int i = 1; i + 1 < n; ++i) {
            d(i, i + 1) = 0.5 / h;
            d(i, i - 1) = -0.5 / h;
        }
        return d;
    }
    if (order == 2) {
        for (int i = 1; i + 1 < n; ++i) {
            d(i, i + 1) = 1.0 / (h * h);
            d(i, i) = -2.0 / (h * h);
            d(i, i - 1) = 1.0 / (h * h);
        }
        return d;
    }
    const ComplexMatrix d2 = derivative_matrix(2, g);
    return d2 * derivative_matrix(order - 2, g);
}

}  // namespace

OperatorMatrix assemble_hamiltonian(const MassFn& m, const Expr& vtilde, const Grid& g, const ParamEnv& env) {
    const int n = g.points();
    const double h = g.spacing();
    const double inv_h2 = 1.0 / (h * h);
    auto inverse_mass = [&](double x) {
        const Complex v = evaluate(m.expr(), x, env);
        if (!(v.real() > 0.0)) throw NumericalError("non-positive mass at x=" + std::to_string(x));
        return 1.0 / v.real();
    };

    OperatorMatrix op{ComplexMatrix::Zero(n, n), g, "H", true};
    auto& a = op.entries;
    a(0, 0) = 1.0;
    a(n - 1, n - 1) = 1.0;
    // One inverse mass per edge keeps the interior block exactly symmetric.
    std::vector<double> edge(static_cast<std::size_t>(n - 1));
    for (int k = 0; k + 1 < n; ++k) edge[static_cast<std::size_t>(k)] = inverse_mass(g.x_min() + (k + 0.5) * h);
    for (int i = 1; i + 1 < n; ++i) {
        const double x = g.node(i);
        const double right = edge[static_cast<std::size_t>(i)];
        const double left = edge[static_cast<std::size_t>(i - 1)];
        a(i, i) = (right + left) * inv_h2 + evaluate(vtilde, x, env);
        if (i + 1 < n - 1) a(i, i + 1) = -right * inv_h2;
        if (i - 1 > 0) a(i, i - 1) = -left * inv_h2;
    }
    return op;
}

OperatorMatrix assemble_charge(const susyn::NthOrderCoefficients& coeffs, const Grid& g, const ParamEnv& env) {
    if (coeffs.n < 1) throw ConfigError("charge order must be >= 1");
    if (!coeffs.complete()) {
        throw ConfigError("unsupported order " + std::to_string(coeffs.n) +
                          ": u-coefficients have no closed form for N >= 3");
    }
    const int n = g.points();
    const auto xs = g.nodes();

    auto diag = [&](const Expr& f) {
        ComplexMatrix d = ComplexMatrix::Zero(n, n);
        for (int i = 1; i + 1 < n; ++i) d(i, i) = evaluate(f, xs[static_cast<std::size_t>(i)], env);
        return d;
    };

    ComplexMatrix c = diag(coeffs.lead) * derivative_matrix(coeffs.n, g);
    c += diag(coeffs.sub) * derivative_matrix(coeffs.n - 1, g);
    for (int j = 0; j + 2 <= coeffs.n; ++j) {
        c += diag(*coeffs.u[static_cast<std::size_t>(j)]) * derivative_matrix(j, g);
    }
    return OperatorMatrix{std::move(c), g, "C", false};
}

OperatorMatrix parity_matrix(const Grid& g) {
    if (!g.symmetric()) throw ConfigError("parity requires a grid symmetric about 0");
    const int n = g.points();
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) p(i, n - 1 - i) = 1.0;
    return OperatorMatrix{std::move(p), g, "P", false};
}

Spectrum spectrum(const OperatorMatrix& op) {
    if (!op.dirichlet_identity_rows) return eigenvalues(op.entries);
    const int n = op.dimension();
    return eigenvalues(op.entries.block(1, 1, n - 2, n - 2));
}

}  // namespace pdmsusy::discrete
