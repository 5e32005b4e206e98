#include "pdmsusy/susy1.hpp"

#include <algorithm>
#include <cmath>

#include "pdmsusy/discrete/residuals.hpp"
#include "pdmsusy/error.hpp"

namespace pdmsusy::susy1 {

FirstOrderSystem build_first_order(const ModelSpec& spec) {
    if (spec.order != 1) throw ConfigError("first-order pipeline requires order 1");
    spec.validate();
    spec.mass.validate(spec.params);

    FirstOrderSystem sys;
    sys.wm = spec.deformed_superpotential();
    sys.m = spec.mass;
    sys.l1 = spec.l(1);
    sys.e0 = -sys.l1;
    sys.params = spec.params;

    const Expr& m = spec.mass.expr();
    const Expr m1 = differentiate(m);
    const Expr m2 = differentiate(m, 2);
    const Expr wm1 = differentiate(sys.wm);
    const Expr root_m = pow(m, 0.5);

    sys.vtilde = pow(sys.wm, 2.0) + wm1 / root_m + m2 / (4.0 * pow(m, 2.0)) -
                 7.0 * pow(m1, 2.0) / (16.0 * pow(m, 3.0)) - constant(sys.l1);
    sys.delta_v = 2.0 * wm1 / root_m;
    sys.phi0 = m1 / (4.0 * m) + root_m * sys.wm;
    return sys;
}

FirstOrderCoefficients charge_coefficients_first(const ModelSpec& spec) {
    if (spec.order != 1) throw ConfigError("first-order coefficients require order 1");
    spec.mass.validate(spec.params);
    return {pow(spec.mass.expr(), -0.5), spec.constant_mass_superpotential()};
}

double riccati_check_first(const FirstOrderSystem& sys, std::span<const double> samples) {
    return discrete::riccati_residual(sys.m, sys.vtilde, sys.phi0, sys.e0, samples, sys.params);
}

std::vector<Complex> integrate_log_derivative(const Expr& phi, std::span<const double> xs, const ParamEnv& env) {
    const std::size_t n = xs.size();
    if (n < 2) throw ConfigError("log-derivative integration needs at least two nodes");
    const double mid = 0.5 * (xs.front() + xs.back());

    // Simpson on [a, b] is RK4 for psi' = phi psi written in log form.
    auto simpson = [&](double a, double b) {
        return (b - a) / 6.0 * (evaluate(phi, a, env) + 4.0 * evaluate(phi, 0.5 * (a + b), env) + evaluate(phi, b, env));
    };

    std::vector<Complex> log_psi(n);
    // The node at or just right of the midpoint anchors the forward sweep.
    const auto right = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), mid) - xs.begin());
    log_psi[right] = xs[right] == mid ? Complex{} : simpson(mid, xs[right]);
    for (std::size_t i = right + 1; i < n; ++i) log_psi[i] = log_psi[i - 1] + simpson(xs[i - 1], xs[i]);
    if (right > 0) {
        std::size_t left = right - 1;
        log_psi[left] = xs[right] == mid ? -simpson(xs[left], xs[right]) : -simpson(xs[left], mid);
        while (left > 0) {
            --left;
            log_psi[left] = log_psi[left + 1] - simpson(xs[left], xs[left + 1]);
        }
    }
    std::vector<Complex> psi(n);
    std::transform(log_psi.begin(), log_psi.end(), psi.begin(), [](Complex z) { return std::exp(z); });
    return psi;
}

ZeroModeReport zero_mode(const Expr& phi, std::span<const double> xs, const ParamEnv& env) {
    ZeroModeReport report;
    report.psi = integrate_log_derivative(phi, xs, env);
    double peak = 0.0;
    for (const Complex v : report.psi) peak = std::max(peak, std::abs(v));
    const double edge = std::max(std::abs(report.psi.front()), std::abs(report.psi.back()));
    report.normalizable_on_window = std::isfinite(peak) && edge <= 1e-3 * peak;

    if (symmetric_about_zero(xs.front(), xs.back())) {
        const std::size_t n = xs.size();
        double defect = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            defect = std::max(defect, std::abs(report.psi[i] - std::conj(report.psi[n - 1 - i])));
        }
        report.pt_defect = defect;
    }
    return report;
}

}  // namespace pdmsusy::susy1
