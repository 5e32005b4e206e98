#pragma once

// Second-order pipeline: the auxiliary function f, the coefficient u0 by two
// routes, the potential, the zero modes and the quadratic eigenvalue formula.

#include <span>
#include <utility>

#include "pdmsusy/expr.hpp"
#include "pdmsusy/model.hpp"

namespace pdmsusy::susy2 {

/// f = (1/2)[m W_m^2 - (m'/m) W_m - W_m'].
Expr f_aux(const Expr& wm, const MassFn& m);

/// u0 in terms of delta = +sqrt(l1^2 - 4 l2).
Expr u0_closed(const Expr& wm, const MassFn& m, Complex l1, Complex l2);

/// u0 = f'/(m W_m) + f^2/(m W_m^2) + theta/(m W_m^2).
Expr u0_integrated(const Expr& f, const Expr& wm, const MassFn& m, Complex theta);

/// V = (3/2) W_m' + (m'/2m) W_m + (m/2) W_m^2 - u0 - l1/2.
Expr potential_second_order(const Expr& wm, const MassFn& m, const Expr& u0, Complex l1);

/// phi_j = m'/(2m) + W_m'/(2 W_m) + (m W_m^2 + (-1)^j delta)/(2 W_m).
/// phi_1 belongs to the energy -(l1 - delta)/2 and phi_2 to -(l1 + delta)/2.
std::pair<Expr, Expr> zero_mode_logderivs(const Expr& wm, const MassFn& m, Complex delta);

struct LowestEigenvalues {
    Complex delta;
    Complex e0;  // -(l1 + delta)/2
    Complex e1;  // -(l1 - delta)/2
    bool real_spectrum = false;
};

LowestEigenvalues lowest_eigenvalues(Complex l1, Complex l2);

/// Throws NumericalError listing the samples where |W_m| < 1e-8.
void require_nonvanishing(const Expr& wm, std::span<const double> samples, const ParamEnv& env);

struct SecondOrderSystem {
    Expr wm;
    MassFn m;
    Complex l1{};
    Complex l2{};
    Complex delta{};
    Expr f;
    Expr u0;
    Expr vtilde;
    /// 2 W_m' + (m'/m) W_m
    Expr delta_v;
    Expr phi1;
    Expr phi2;
    Complex e0{};
    Complex e1{};
    bool real_spectrum = false;
    ParamEnv params;

    /// Zero mode of the ground energy e0.
    const Expr& ground_logderiv() const { return phi2; }
};

/// Throws ConfigError unless spec.order == 2, NumericalError when W_m
/// vanishes on the domain samples.
SecondOrderSystem build_second_order(const ModelSpec& spec);

}  // namespace pdmsusy::susy2
