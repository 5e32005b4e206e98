#pragma once

// General-order formulas: PT defects of the potential and of the charge
// coefficients, the closed potential, and the degree-N energy polynomial.

#include <optional>
#include <utility>
#include <vector>

#include "pdmsusy/expr.hpp"
#include "pdmsusy/model.hpp"

namespace pdmsusy::susyn {

/// Coefficients of C = m^(-N/2) d^N + W d^(N-1) + sum_j u_j d^j.
struct NthOrderCoefficients {
    int n = 1;
    Expr lead;  // m^(-N/2)
    Expr sub;   // W, the constant-mass superpotential
    /// u_0..u_{N-2}; an entry is empty when it has no closed form.
    std::vector<std::optional<Expr>> u;

    bool complete() const;
};

/// Coefficients for a model. u_0 is filled for N = 2; entries for N >= 3
/// stay empty.
NthOrderCoefficients charge_coefficients(const ModelSpec& spec);

/// Delta V = (m^(N/2)/m^2) [2 m W_m' + (N-1) m' W_m].
Expr delta_v_general(const Expr& wm, const MassFn& m, int n);

/// The closed potential divided through by N, with C(N,2) = 0 for N < 2:
///   N V = (m^(N/2)/m^2) [C(N,2) m' W_m + m {m^(N/2) W_m^2 + (2N-1) W_m' - 2 u_{N-2}}]
///         + N(N-2)/48 [4(2N+1) (1/m)'' + 3N(N-2) m ((1/m)')^2] + lambda
/// `u_nm2` must be zero when N < 2.
Expr potential_general(const Expr& wm, const MassFn& m, const Expr& u_nm2, int n, Complex lambda);

struct DeltaU {
    Expr delta_u_nm2;                 // (N-1) W_m'
    std::optional<Expr> delta_u_nm3;  // present for N >= 3 when u_{N-2} is given
};

/// PT defects of u_{N-2} and u_{N-3}. Requires n >= 2; throws ConfigError otherwise.
DeltaU delta_u_coefficients(const Expr& wm, const MassFn& m, int n, const std::optional<Expr>& u_nm2);

struct EnergyPolynomial {
    std::vector<Complex> coefficients;  // l_1..l_N; l_0 = 1 implicit
    std::vector<Complex> roots;         // sorted by (Re, Im)

    /// |r^N + sum_k l_k r^(N-k)|
    Complex evaluate(Complex e) const;
    /// max over roots of |p(r)| / max(1, |r|^N)
    double scaled_residual() const;
};

/// Roots of E^N + l_1 E^(N-1) + ... + l_N via the companion matrix, each
/// polished by one Newton step.
EnergyPolynomial energy_roots(const std::vector<Complex>& l);

/// Binomial coefficient with C(n, k) = 0 for n < k.
double binomial(int n, int k);

}  // namespace pdmsusy::susyn
