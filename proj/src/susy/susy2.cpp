#include "pdmsusy/susy2.hpp"

#include <cmath>
#include <sstream>
#include <tuple>

#include "pdmsusy/error.hpp"

namespace pdmsusy::susy2 {

Expr f_aux(const Expr& wm, const MassFn& m) {
    const Expr& mass = m.expr();
    const Expr m1 = differentiate(mass);
    return 0.5 * (mass * pow(wm, 2.0) - (m1 / mass) * wm - differentiate(wm));
}

Expr u0_closed(const Expr& wm, const MassFn& m, Complex l1, Complex l2) {
    const Expr& mass = m.expr();
    const Expr m1 = differentiate(mass);
    const Expr m2 = differentiate(mass, 2);
    const Expr w1 = differentiate(wm);
    const Expr w2 = differentiate(wm, 2);
    const Complex delta = std::sqrt(l1 * l1 - 4.0 * l2);
    return mass * pow(wm, 2.0) / 4.0 + w1 / 2.0 - w2 / (2.0 * mass * wm) +
           pow(w1 / (2.0 * wm), 2.0) / mass + 0.75 * pow(m1, 2.0) / pow(mass, 3.0) - m2 / (2.0 * pow(mass, 2.0)) -
           pow(constant(delta) / (2.0 * wm), 2.0) / mass;
}

Expr u0_integrated(const Expr& f, const Expr& wm, const MassFn& m, Complex theta) {
    const Expr& mass = m.expr();
    const Expr mw2 = mass * pow(wm, 2.0);
    return differentiate(f) / (mass * wm) + pow(f, 2.0) / mw2 + constant(theta) / mw2;
}

Expr potential_second_order(const Expr& wm, const MassFn& m, const Expr& u0, Complex l1) {
    const Expr& mass = m.expr();
    const Expr m1 = differentiate(mass);
    return 1.5 * differentiate(wm) + (m1 / (2.0 * mass)) * wm + (mass / 2.0) * pow(wm, 2.0) - u0 -
           constant(l1 / 2.0);
}

std::pair<Expr, Expr> zero_mode_logderivs(const Expr& wm, const MassFn& m, Complex delta) {
    const Expr& mass = m.expr();
    const Expr common = differentiate(mass) / (2.0 * mass) + differentiate(wm) / (2.0 * wm);
    const Expr mw2 = mass * pow(wm, 2.0);
    const Expr f1 = (mw2 - constant(delta)) / (2.0 * wm);
    const Expr f2 = (mw2 + constant(delta)) / (2.0 * wm);
    return {common + f1, common + f2};
}

LowestEigenvalues lowest_eigenvalues(Complex l1, Complex l2) {
    LowestEigenvalues out;
    const Complex disc = l1 * l1 - 4.0 * l2;
    out.delta = std::sqrt(disc);
    out.e0 = -(l1 + out.delta) / 2.0;
    out.e1 = -(l1 - out.delta) / 2.0;
    // Exact boundary: compare l1^2 with 4 l2 rather than the rounded difference.
    out.real_spectrum = l1.imag() == 0.0 && l2.imag() == 0.0 && l1.real() * l1.real() >= 4.0 * l2.real();
    return out;
}

void require_nonvanishing(const Expr& wm, std::span<const double> samples, const ParamEnv& env) {
    std::ostringstream where;
    std::size_t hits = 0;
    for (double x : samples) {
        if (std::abs(evaluate(wm, x, env)) < 1e-8) {
            if (hits < 8) where << (hits ? ", " : "") << x;
            ++hits;
        }
    }
    if (hits > 0) {
        throw NumericalError("singular point: W_m vanishes near x = " + where.str() +
                             (hits > 8 ? " (" + std::to_string(hits) + " samples)" : ""));
    }
}

SecondOrderSystem build_second_order(const ModelSpec& spec) {
    if (spec.order != 2) throw ConfigError("second-order pipeline requires order 2");
    spec.validate();
    spec.mass.validate(spec.params);

    SecondOrderSystem sys;
    sys.wm = spec.deformed_superpotential();
    sys.m = spec.mass;
    sys.l1 = spec.l(1);
    sys.l2 = spec.l(2);
    sys.params = spec.params;
    require_nonvanishing(sys.wm, chebyshev_samples(spec.mass.x_min(), spec.mass.x_max()), spec.params);

    const LowestEigenvalues ev = lowest_eigenvalues(sys.l1, sys.l2);
    sys.delta = ev.delta;
    sys.e0 = ev.e0;
    sys.e1 = ev.e1;
    sys.real_spectrum = ev.real_spectrum;

    sys.f = f_aux(sys.wm, sys.m);
    sys.u0 = u0_closed(sys.wm, sys.m, sys.l1, sys.l2);
    sys.vtilde = potential_second_order(sys.wm, sys.m, sys.u0, sys.l1);
    sys.delta_v = 2.0 * differentiate(sys.wm) + differentiate(sys.m.expr()) / sys.m.expr() * sys.wm;
    std::tie(sys.phi1, sys.phi2) = zero_mode_logderivs(sys.wm, sys.m, sys.delta);
    return sys;
}

}  // namespace pdmsusy::susy2
