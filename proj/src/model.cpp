#include "pdmsusy/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdmsusy/error.hpp"

namespace pdmsusy {

MassFn::MassFn() : MassFn(constant(1.0), -1.0, 1.0) {}

MassFn::MassFn(Expr expr, double x_min, double x_max) : expr_(std::move(expr)), x_min_(x_min), x_max_(x_max) {
    if (!(x_min < x_max)) throw ConfigError("mass domain requires x_min < x_max");
}

void MassFn::validate(std::span<const double> samples, const ParamEnv& env) const {
    for (double x : samples) {
        const Complex v = evaluate(expr_, x, env);
        if (std::abs(v.imag()) > 1e-14 * (1.0 + std::abs(v))) {
            throw ConfigError("mass is not real-valued at x=" + std::to_string(x));
        }
        if (!(v.real() > 0.0)) throw ConfigError("mass is not positive at x=" + std::to_string(x));
    }
}

void MassFn::validate(const ParamEnv& env) const { validate(chebyshev_samples(x_min_, x_max_), env); }

void ModelSpec::validate() const {
    if (order < 1) throw ConfigError("order must be >= 1");
    if (static_cast<int>(susy_constants.size()) != order) {
        throw ConfigError("susy_constants: expected " + std::to_string(order) + " values, got " +
                          std::to_string(susy_constants.size()));
    }
}

Expr ModelSpec::deformed_superpotential() const {
    if (superpotential.kind == SuperpotentialKind::Deformed) return superpotential.expr;
    return mass_deformed_superpotential(superpotential.expr, mass, order, params);
}

Expr ModelSpec::constant_mass_superpotential() const {
    if (superpotential.kind == SuperpotentialKind::ConstantMass) return superpotential.expr;
    return undeformed_superpotential(superpotential.expr, mass, order);
}

bool ModelSpec::real_constants() const {
    return std::all_of(susy_constants.begin(), susy_constants.end(), [](Complex c) { return c.imag() == 0.0; });
}

Complex ModelSpec::l(int k) const {
    if (k == 0) return 1.0;
    if (k < 0 || k > static_cast<int>(susy_constants.size())) throw ConfigError("susy constant index out of range");
    return susy_constants[static_cast<std::size_t>(k - 1)];
}

namespace {

// d/dx [m^(-N/2)]
Expr inverse_root_mass_derivative(const MassFn& m, int n) {
    return differentiate(pow(m.expr(), -0.5 * n));
}

}  // namespace

Expr mass_deformed_superpotential(const Expr& w, const MassFn& m, int n, const ParamEnv& env) {
    if (n < 1) throw ConfigError("order must be >= 1");
    m.validate(env);
    return w - (0.5 * n) * inverse_root_mass_derivative(m, n);
}

Expr undeformed_superpotential(const Expr& wm, const MassFn& m, int n) {
    if (n < 1) throw ConfigError("order must be >= 1");
    return wm + (0.5 * n) * inverse_root_mass_derivative(m, n);
}

Expr rho(const MassFn& m, double a, double b) {
    const Expr& mass = m.expr();
    const Expr m1 = differentiate(mass);
    const Expr m2 = differentiate(mass, 2);
    const double c = 1.0 + b + a * (a + b + 1.0);
    return (0.5 * (1.0 + b)) * m2 / pow(mass, 2.0) - c * pow(m1, 2.0) / pow(mass, 3.0);
}

Expr pt_image(const Expr& f) { return conj(substitute_x(f, Expr::unary(Expr::Kind::Negate, var_x()))); }

SymmetryReport symmetry_report(const ModelSpec& spec, std::span<const double> samples) {
    if (samples.empty()) throw ConfigError("symmetry_report: no samples");
    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
    if (!symmetric_about_zero(*lo, *hi)) throw ConfigError("symmetry_report: domain not symmetric about 0");

    const Expr& m = spec.mass.expr();
    const Expr wm = spec.deformed_superpotential();
    SymmetryReport report;
    report.mass_parity_defect = sup_difference(m, substitute_x(m, -var_x()), samples, spec.params);
    report.wm_pt_defect = sup_difference(wm, pt_image(wm), samples, spec.params);
    return report;
}

std::vector<double> chebyshev_samples(double a, double b, std::size_t count) {
    std::vector<double> xs(count);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = std::cos(std::numbers::pi * (static_cast<double>(count - 1 - k) + 0.5) / count);
        xs[k] = mid + half * t;
    }
    return xs;
}

std::vector<double> interior_samples(double a, double b, std::size_t count) {
    std::vector<double> xs(count);
    const double step = (b - a) / static_cast<double>(count + 1);
    for (std::size_t k = 0; k < count; ++k) xs[k] = a + static_cast<double>(k + 1) * step;
    return xs;
}

bool symmetric_about_zero(double lo, double hi) {
    return lo < hi && std::abs(lo + hi) <= 1e-12 * std::max(1.0, std::abs(hi));
}

double sup_difference(const Expr& f, const Expr& g, std::span<const double> xs, const ParamEnv& env) {
    double worst = 0.0;
    for (double x : xs) worst = std::max(worst, std::abs(evaluate(f, x, env) - evaluate(g, x, env)));
    return worst;
}

double sup_abs(const Expr& f, std::span<const double> xs, const ParamEnv& env) {
    double worst = 0.0;
    for (double x : xs) worst = std::max(worst, std::abs(evaluate(f, x, env)));
    return worst;
}

}  // namespace pdmsusy
