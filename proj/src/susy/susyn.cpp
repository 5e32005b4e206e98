#include "pdmsusy/susyn.hpp"

#include <algorithm>
#include <cmath>

#include "pdmsusy/discrete/eigensolver.hpp"
#include "pdmsusy/error.hpp"
#include "pdmsusy/susy2.hpp"

namespace pdmsusy::susyn {

bool NthOrderCoefficients::complete() const {
    return std::all_of(u.begin(), u.end(), [](const std::optional<Expr>& e) { return e.has_value(); });
}

NthOrderCoefficients charge_coefficients(const ModelSpec& spec) {
    spec.validate();
    NthOrderCoefficients c;
    c.n = spec.order;
    c.lead = pow(spec.mass.expr(), -0.5 * spec.order);
    c.sub = spec.constant_mass_superpotential();
    c.u.assign(static_cast<std::size_t>(std::max(spec.order - 1, 0)), std::nullopt);
    if (spec.order == 2) {
        c.u[0] = susy2::u0_closed(spec.deformed_superpotential(), spec.mass, spec.l(1), spec.l(2));
    }
    return c;
}

double binomial(int n, int k) {
    if (k < 0 || n < k) return 0.0;
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

Expr delta_v_general(const Expr& wm, const MassFn& m, int n) {
    if (n < 1) throw ConfigError("order must be >= 1");
    const Expr& mass = m.expr();
    const Expr prefactor = pow(mass, 0.5 * n) / pow(mass, 2.0);
    return prefactor * (2.0 * mass * differentiate(wm) + static_cast<double>(n - 1) * differentiate(mass) * wm);
}

Expr potential_general(const Expr& wm, const MassFn& m, const Expr& u_nm2, int n, Complex lambda) {
    if (n < 1) throw ConfigError("order must be >= 1");
    const Expr& mass = m.expr();
    const double nn = n;
    const Expr root = pow(mass, 0.5 * n);
    const Expr inner = root * pow(wm, 2.0) + (2.0 * nn - 1.0) * differentiate(wm) - 2.0 * u_nm2;
    const Expr main = root / pow(mass, 2.0) * (binomial(n, 2) * differentiate(mass) * wm + mass * inner);

    const Expr inv = 1.0 / mass;
    const Expr mass_terms = (nn * (nn - 2.0) / 48.0) * (4.0 * (2.0 * nn + 1.0) * differentiate(inv, 2) +
                                                         3.0 * nn * (nn - 2.0) * mass * pow(differentiate(inv), 2.0));
    return (main + mass_terms + constant(lambda)) / nn;
}

DeltaU delta_u_coefficients(const Expr& wm, const MassFn& m, int n, const std::optional<Expr>& u_nm2) {
    if (n < 2) throw ConfigError("u-coefficient defects require order >= 2");
    DeltaU out{static_cast<double>(n - 1) * differentiate(wm), std::nullopt};
    if (n >= 3 && u_nm2) {
        const double nn = n;
        const Expr braces = (nn / 6.0) * differentiate(pow(m.expr(), -0.5 * nn), 3) + differentiate(wm, 2);
        out.delta_u_nm3 = (nn - 2.0) * (-((nn - 1.0) / 2.0) * braces + differentiate(*u_nm2));
    }
    return out;
}

Complex EnergyPolynomial::evaluate(Complex e) const {
    Complex p = 1.0;
    for (const Complex c : coefficients) p = p * e + c;
    return p;
}

double EnergyPolynomial::scaled_residual() const {
    const double degree = static_cast<double>(coefficients.size());
    double worst = 0.0;
    for (const Complex r : roots) {
        worst = std::max(worst, std::abs(evaluate(r)) / std::max(1.0, std::pow(std::abs(r), degree)));
    }
    return worst;
}

EnergyPolynomial energy_roots(const std::vector<Complex>& l) {
    if (l.empty()) throw ConfigError("energy polynomial needs at least one constant");
    const auto n = static_cast<Eigen::Index>(l.size());
    discrete::ComplexMatrix companion = discrete::ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) companion(0, j) = -l[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;

    EnergyPolynomial poly;
    poly.coefficients = l;
    poly.roots = discrete::eigenvalues(companion).eigenvalues;

    for (Complex& r : poly.roots) {
        Complex p = 1.0;
        Complex dp = 0.0;
        for (const Complex c : l) {
            dp = dp * r + p;
            p = p * r + c;
        }
        if (dp == 0.0) continue;
        const Complex polished = r - p / dp;
        if (std::isfinite(polished.real()) && std::isfinite(polished.imag()) &&
            std::abs(poly.evaluate(polished)) <= std::abs(p)) {
            r = polished;
        }
    }
    discrete::sort_spectrum(poly.roots);
    return poly;
}

}  // namespace pdmsusy::susyn
