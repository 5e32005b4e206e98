#pragma once

// Residuals of the operator constraints on a grid, the pointwise Riccati
// check, the supercharge block algebra and the inverse-intertwining test.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pdmsusy/discrete/operators.hpp"
#include "pdmsusy/expr.hpp"
#include "pdmsusy/model.hpp"

namespace pdmsusy::discrete {

/// sup over samples of |-(phi' + phi^2)/m + (m'/m^2) phi + V - e|.
double riccati_residual(const MassFn& m, const Expr& vtilde, const Expr& phi, Complex e,
                        std::span<const double> samples, const ParamEnv& env = {});

enum class ResidualNorm {
    /// Operator identities applied to smooth probe functions.
    Probe,
    /// Frobenius norm of the whole interior block.
    Frobenius,
};

/// Smooth probes on the grid: Gaussians of width L/12 centred at c and
/// c +- L/4, and the odd profile (x - c) times the central Gaussian, where c
/// is the centre and L the half-width of the window. The probes are below
/// 1e-17 at the window edges, so boundary rows never enter the residuals.
ComplexMatrix probe_functions(const Grid& g);

/// Relative residuals of the three constraints with zeta = C P:
///   pseudo: zeta - zeta^H
///   cpt:    C (P conj(H) P) - H C
///   susy:   zeta conj(zeta) - sum_k l_k H^(N-k)
/// Only interior rows beyond a margin of 2N nodes contribute. Each residual
/// is divided by the norm of its leading term. Throws ConfigError on
/// dimension mismatch or an asymmetric grid.
std::map<std::string, double> constraint_residuals(const OperatorMatrix& h, const OperatorMatrix& c,
                                                   const OperatorMatrix& p, std::span<const Complex> l, int order,
                                                   ResidualNorm norm = ResidualNorm::Probe);

/// Supercharges Q = [[0, 0], [zeta, 0]], Qbar = [[0, conj(zeta)], [0, 0]]
/// and K = Q Qbar + Qbar Q.
struct SuperchargeAlgebra {
    ComplexMatrix q;
    ComplexMatrix qbar;
    ComplexMatrix k;
};

SuperchargeAlgebra supercharge_algebra(const ComplexMatrix& zeta);

struct InverseIntertwining {
    double condition_number = 0.0;
    /// Empty when the condition number exceeds the threshold.
    std::optional<double> residual;
    /// ||zeta - zeta^H|| / ||zeta|| over the same interior block.
    double pseudo_defect = 0.0;
};

/// ||H^H zeta^-1 - zeta^-1 H|| / ||zeta^-1 H|| on the interior block of the
/// grid, skipped when cond(zeta) > max_condition.
InverseIntertwining inverse_intertwining(const OperatorMatrix& h, const OperatorMatrix& c, const OperatorMatrix& p,
                                         double max_condition = 1e8);

}  // namespace pdmsusy::discrete
