#pragma once

// First-order pipeline: charge coefficients, potential, PT defect of the
// potential and the ground-state log-derivative.

#include <optional>
#include <span>
#include <vector>

#include "pdmsusy/expr.hpp"
#include "pdmsusy/model.hpp"

namespace pdmsusy::susy1 {

struct FirstOrderSystem {
    Expr wm;
    MassFn m;
    Complex l1{};
    Expr vtilde;
    Expr delta_v;
    /// Log-derivative of the zero mode psi_0.
    Expr phi0;
    Complex e0{};
    ParamEnv params;
};

/// Throws ConfigError unless spec.order == 1.
FirstOrderSystem build_first_order(const ModelSpec& spec);

struct FirstOrderCoefficients {
    Expr lead;    // m^(-1/2)
    Expr zeroth;  // W, the constant-mass superpotential
};

FirstOrderCoefficients charge_coefficients_first(const ModelSpec& spec);

/// sup over samples of |-(phi0' + phi0^2)/m + (m'/m^2) phi0 + V - e0|.
double riccati_check_first(const FirstOrderSystem& sys, std::span<const double> samples);

/// psi values on `xs` obtained by integrating a log-derivative phi from the
/// midpoint of [xs.front(), xs.back()] with fixed-step RK4, psi(mid) = 1.
/// `xs` must be increasing and uniformly spaced.
std::vector<Complex> integrate_log_derivative(const Expr& phi, std::span<const double> xs, const ParamEnv& env);

struct ZeroModeReport {
    std::vector<Complex> psi;
    /// |psi| at both window edges <= 1e-3 max |psi|.
    bool normalizable_on_window = false;
    /// sup |psi(x) - conj(psi(-x))| under the midpoint normalization; only
    /// set when the nodes are symmetric about 0.
    std::optional<double> pt_defect;
};

ZeroModeReport zero_mode(const Expr& phi, std::span<const double> xs, const ParamEnv& env);

}  // namespace pdmsusy::susy1
