#pragma once

// Finite-difference images of the Hamiltonian, the charge operator and
// parity on a uniform grid, with Dirichlet boundaries.

#include <string>

#include "pdmsusy/discrete/eigensolver.hpp"
#include "pdmsusy/discrete/grid.hpp"
#include "pdmsusy/expr.hpp"
#include "pdmsusy/model.hpp"
#include "pdmsusy/susyn.hpp"

namespace pdmsusy::discrete {

struct OperatorMatrix {
    ComplexMatrix entries;
    Grid grid;
    std::string label;
    /// Rows 0 and n-1 are identity rows decoupled from the interior block.
    bool dirichlet_identity_rows = false;

    int dimension() const noexcept { return static_cast<int>(entries.rows()); }
};

/// H = -d (1/m) d + V on the grid. Interior rows use midpoint masses:
///   -(1/h^2) [(psi_{i+1} - psi_i)/m_{i+1/2} - (psi_i - psi_{i-1})/m_{i-1/2}] + V_i psi_i.
/// Boundary rows are identity rows; the interior block does not couple to them.
OperatorMatrix assemble_hamiltonian(const MassFn& m, const Expr& vtilde, const Grid& g, const ParamEnv& env = {});

/// Central-difference image of the charge operator: coefficients at the
/// nodes, first derivative (psi_{i+1} - psi_{i-1})/2h, second derivative the
/// 3-point stencil, higher orders composed from those. Boundary rows are zero.
/// Throws ConfigError when a u-coefficient is absent.
OperatorMatrix assemble_charge(const susyn::NthOrderCoefficients& coeffs, const Grid& g, const ParamEnv& env = {});

/// Node-reversal permutation; requires a symmetric grid.
OperatorMatrix parity_matrix(const Grid& g);

/// Spectrum of an operator; for Dirichlet operators the identity rows are
/// dropped and the interior block is diagonalized.
Spectrum spectrum(const OperatorMatrix& op);

}  // namespace pdmsusy::discrete
