#include "pdmsusy/discrete/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdmsusy/error.hpp"

namespace pdmsusy::discrete {

double riccati_residual(const MassFn& m, const Expr& vtilde, const Expr& phi, Complex e,
                        std::span<const double> samples, const ParamEnv& env) {
    const Expr& mass = m.expr();
    const Expr m1 = differentiate(mass);
    const Expr phi1 = differentiate(phi);
    double worst = 0.0;
    for (double x : samples) {
        const Complex mv = evaluate(mass, x, env);
        const Complex p = evaluate(phi, x, env);
        const Complex r = -(evaluate(phi1, x, env) + p * p) / mv + evaluate(m1, x, env) / (mv * mv) * p +
                          evaluate(vtilde, x, env) - e;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

ComplexMatrix probe_functions(const Grid& g) {
    const int n = g.points();
    const double c = 0.5 * (g.x_min() + g.x_max());
    const double half = 0.5 * (g.x_max() - g.x_min());
    const double s = half / 12.0;
    auto gauss = [s](double x, double centre) { return std::exp(-0.5 * (x - centre) * (x - centre) / (s * s)); };

    ComplexMatrix v(n, 4);
    for (int i = 0; i < n; ++i) {
        const double x = g.node(i);
        v(i, 0) = gauss(x, c);
        v(i, 1) = gauss(x, c - 0.25 * half);
        v(i, 2) = gauss(x, c + 0.25 * half);
        v(i, 3) = (x - c) / s * gauss(x, c);
    }
    return v;
}

namespace {

void require_compatible(const OperatorMatrix& h, const OperatorMatrix& c, const OperatorMatrix& p) {
    const int n = h.dimension();
    if (c.dimension() != n || p.dimension() != n) throw ConfigError("operator dimensions do not match");
    if (!(h.grid == c.grid) || !(h.grid == p.grid)) throw ConfigError("operators live on different grids");
    if (!h.grid.symmetric()) throw ConfigError("constraint residuals require a grid symmetric about 0");
}

// Frobenius norm of the rows [lo, n - lo).
double interior_norm(const ComplexMatrix& a, int margin) {
    const auto rows = a.rows() - 2 * margin;
    if (rows <= 0) return 0.0;
    return a.middleRows(margin, rows).norm();
}

double ratio(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

}  // namespace

std::map<std::string, double> constraint_residuals(const OperatorMatrix& h, const OperatorMatrix& c,
                                                   const OperatorMatrix& p, std::span<const Complex> l, int order,
                                                   ResidualNorm norm) {
    require_compatible(h, c, p);
    if (order < 1 || static_cast<int>(l.size()) != order) throw ConfigError("constraint residuals: need l_1..l_N");
    const int n = h.dimension();
    const int margin = std::max(1, 2 * order);

    const ComplexMatrix& hm = h.entries;
    const ComplexMatrix& cm = c.entries;
    const ComplexMatrix& pm = p.entries;

    // The operator identities act on a block of columns: smooth probes, or
    // the interior identity for the Frobenius variant.
    ComplexMatrix v;
    if (norm == ResidualNorm::Probe) {
        v = probe_functions(h.grid);
    } else {
        v = ComplexMatrix::Zero(n, n - 2 * margin);
        for (int j = 0; j < n - 2 * margin; ++j) v(margin + j, j) = 1.0;
    }

    std::map<std::string, double> out;

    const ComplexMatrix zeta_v = cm * (pm * v);
    const ComplexMatrix zeta_h_v = pm.transpose() * (cm.adjoint() * v);
    out["pseudo"] = ratio(interior_norm(zeta_v - zeta_h_v, margin), interior_norm(zeta_v, margin));

    const ComplexMatrix hc_v = hm * (cm * v);
    const ComplexMatrix c_phbarp_v = cm * (pm * (hm.conjugate() * (pm * v)));
    out["cpt"] = ratio(interior_norm(c_phbarp_v - hc_v, margin), interior_norm(hc_v, margin));

    // zeta conj(zeta) v = C P conj(C) P v, with P real.
    const ComplexMatrix zz_v = cm * (pm * (cm.conjugate() * (pm * v)));
    ComplexMatrix power = v;  // H^0 v
    std::vector<ComplexMatrix> powers{power};
    for (int k = 1; k <= order; ++k) {
        power = hm * power;
        powers.push_back(power);
    }
    ComplexMatrix poly = powers[static_cast<std::size_t>(order)];
    for (int k = 1; k <= order; ++k) poly += l[static_cast<std::size_t>(k - 1)] * powers[static_cast<std::size_t>(order - k)];
    out["susy"] = ratio(interior_norm(zz_v - poly, margin), interior_norm(powers.back(), margin));
    return out;
}

SuperchargeAlgebra supercharge_algebra(const ComplexMatrix& zeta) {
    const auto n = zeta.rows();
    const ComplexMatrix zeta_bar = zeta.conjugate();
    SuperchargeAlgebra a;
    a.q = ComplexMatrix::Zero(2 * n, 2 * n);
    a.qbar = ComplexMatrix::Zero(2 * n, 2 * n);
    a.q.topRightCorner(n, n) = zeta;
    a.qbar.bottomLeftCorner(n, n) = zeta_bar;
    // Q Qbar + Qbar Q multiplied block by block; structurally zero blocks
    // contribute nothing, so the result is exact block algebra.
    a.k = ComplexMatrix::Zero(2 * n, 2 * n);
    a.k.topLeftCorner(n, n).noalias() = a.q.topRightCorner(n, n) * a.qbar.bottomLeftCorner(n, n);
    a.k.bottomRightCorner(n, n).noalias() = a.qbar.bottomLeftCorner(n, n) * a.q.topRightCorner(n, n);
    return a;
}

InverseIntertwining inverse_intertwining(const OperatorMatrix& h, const OperatorMatrix& c, const OperatorMatrix& p,
                                         double max_condition) {
    require_compatible(h, c, p);
    const int n = h.dimension();
    const ComplexMatrix zeta_full = c.entries * p.entries;
    const ComplexMatrix zeta = zeta_full.block(1, 1, n - 2, n - 2);
    const ComplexMatrix hi = h.entries.block(1, 1, n - 2, n - 2);

    InverseIntertwining out;
    out.pseudo_defect = ratio((zeta - zeta.adjoint()).norm(), zeta.norm());

    Eigen::BDCSVD<ComplexMatrix> svd(zeta);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    out.condition_number = smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
    if (!(out.condition_number <= max_condition)) return out;

    const ComplexMatrix zinv = zeta.partialPivLu().inverse();
    const ComplexMatrix zh = zinv * hi;
    out.residual = ratio((hi.adjoint() * zinv - zh).norm(), zh.norm());
    return out;
}

}  // namespace pdmsusy::discrete
