#pragma once

// Domain types for position-dependent-mass models: the mass function, the
// model specification, the mass-deformed superpotential, the ordering term
// rho(m), and sampled symmetry measures.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "pdmsusy/expr.hpp"

namespace pdmsusy {

/// A real, positive mass function m(x) on an open interval.
class MassFn {
public:
    /// m = 1 on (-1, 1).
    MassFn();
    /// Throws ConfigError unless x_min < x_max.
    MassFn(Expr expr, double x_min, double x_max);

    const Expr& expr() const noexcept { return expr_; }
    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }

    /// Checks |Im m| <= 1e-14 (1 + |m|) and Re m > 0 on `samples`.
    /// Throws ConfigError on violation, NumericalError on poles.
    void validate(std::span<const double> samples, const ParamEnv& env) const;
    /// Same check on the default Chebyshev sample set of the domain.
    void validate(const ParamEnv& env) const;

private:
    Expr expr_;
    double x_min_;
    double x_max_;
};

enum class SuperpotentialKind {
    ConstantMass,  // the user gives W(x); W_m is derived from it
    Deformed,      // the user gives W_m(x) directly
};

struct Superpotential {
    SuperpotentialKind kind = SuperpotentialKind::Deformed;
    Expr expr;
};

/// Ordering (ambiguity) parameters of the kinetic term.
struct Ambiguity {
    double a = 0.0;
    double b = 0.0;
};

struct ModelSpec {
    int order = 1;
    MassFn mass;
    Superpotential superpotential;
    /// l_1..l_N; l_0 = 1 is implicit and never stored.
    std::vector<Complex> susy_constants;
    Ambiguity ambiguity;
    ParamEnv params;

    /// Throws ConfigError if the order or the constant count is invalid.
    void validate() const;
    /// The mass-deformed superpotential W_m.
    Expr deformed_superpotential() const;
    /// The constant-mass superpotential W, inverting the deformation if needed.
    Expr constant_mass_superpotential() const;
    bool real_constants() const;
    Complex l(int k) const;
};

struct SymmetryReport {
    double mass_parity_defect = 0.0;  // sup |m(x) - m(-x)|
    double wm_pt_defect = 0.0;        // sup |W_m(x) - conj(W_m(-x))|
    /// Further named sup-norm defects filled in by the pipelines.
    std::map<std::string, double> function_defects;
};

/// W_m = W - (N/2) d/dx [m^(-N/2)]. Validates m on its domain first.
Expr mass_deformed_superpotential(const Expr& w, const MassFn& m, int n, const ParamEnv& env = {});

/// Inverse of mass_deformed_superpotential: W = W_m + (N/2) d/dx [m^(-N/2)].
Expr undeformed_superpotential(const Expr& wm, const MassFn& m, int n);

/// rho(m) = ((1+b)/2) m''/m^2 - c m'^2/m^3 with c = 1 + b + a(a+b+1).
Expr rho(const MassFn& m, double a, double b);

/// PT image: an expression evaluating to conj(f(-x)).
Expr pt_image(const Expr& f);

/// Sampled parity and PT defects. Throws ConfigError unless the samples
/// span a domain symmetric about 0.
SymmetryReport symmetry_report(const ModelSpec& spec, std::span<const double> samples);

// Sampling helpers.

/// `count` Chebyshev points of the first kind mapped to (a, b).
std::vector<double> chebyshev_samples(double a, double b, std::size_t count = 513);
/// `count` equally spaced points strictly inside (a, b).
std::vector<double> interior_samples(double a, double b, std::size_t count);
/// True when [lo, hi] is symmetric about zero to relative 1e-12.
bool symmetric_about_zero(double lo, double hi);
/// sup over samples of |f(x) - g(x)|.
double sup_difference(const Expr& f, const Expr& g, std::span<const double> xs, const ParamEnv& env);
/// sup over samples of |f(x)|.
double sup_abs(const Expr& f, std::span<const double> xs, const ParamEnv& env);

}  // namespace pdmsusy
