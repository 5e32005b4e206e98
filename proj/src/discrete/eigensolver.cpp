#include "pdmsusy/discrete/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pdmsusy/error.hpp"

namespace pdmsusy::discrete {

namespace {

using Index = Eigen::Index;

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// Parlett-Reinsch balancing with radix 2; scales row i by 1/f and column i
// by f so that row and column 1-norms become comparable. Exact in binary.
void balance(ComplexMatrix& a) {
    constexpr double radix = 2.0;
    constexpr double radix2 = radix * radix;
    const Index n = a.rows();
    bool done = false;
    while (!done) {
        done = true;
        for (Index i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += abs1(a(j, i));
                r += abs1(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix2;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form, in place.
void hessenberg(ComplexMatrix& a) {
    const Index n = a.rows();
    Eigen::VectorXcd v;
    for (Index k = 0; k + 2 < n; ++k) {
        const Index len = n - k - 1;
        auto x = a.col(k).segment(k + 1, len);
        const double tail = x.tail(len - 1).norm();
        if (tail == 0.0) continue;
        const double xnorm = std::hypot(std::abs(x(0)), tail);
        const Complex x0 = x(0);
        const Complex phase = x0 == 0.0 ? Complex(1.0, 0.0) : x0 / std::abs(x0);
        const Complex alpha = -phase * xnorm;
        v = x;
        v(0) -= alpha;
        v /= v.norm();
        // A <- (I - 2 v v^H) A (I - 2 v v^H)
        auto rows = a.bottomRows(len);
        const Eigen::RowVectorXcd vha = v.adjoint() * rows;
        rows.noalias() -= 2.0 * v * vha;
        auto cols = a.rightCols(len);
        const Eigen::VectorXcd av = cols * v;
        cols.noalias() -= 2.0 * av * v.adjoint();
        a(k + 1, k) = alpha;
        a.block(k + 2, k, len - 1, 1).setZero();
    }
}

// Unitary G = [c s; -conj(s) c], c real, with G [a; b] = [r; 0].
struct Givens {
    double c = 1.0;
    Complex s{};

    static Givens make(Complex a, Complex b) {
        Givens g;
        if (b == 0.0) return g;
        const double nb = std::abs(b);
        if (a == 0.0) {
            g.c = 0.0;
            g.s = std::conj(b) / nb;
            return g;
        }
        const double na = std::abs(a);
        const double norm = std::hypot(na, nb);
        g.c = na / norm;
        g.s = (a / na) * std::conj(b) / norm;
        return g;
    }

    // Rows p, q of columns [j0, j1].
    void apply_left(ComplexMatrix& h, Index p, Index q, Index j0, Index j1) const {
        for (Index j = j0; j <= j1; ++j) {
            const Complex x = h(p, j);
            const Complex y = h(q, j);
            h(p, j) = c * x + s * y;
            h(q, j) = -std::conj(s) * x + c * y;
        }
    }

    // Columns p, q of rows [i0, i1], multiplied by G^H from the right.
    void apply_right(ComplexMatrix& h, Index p, Index q, Index i0, Index i1) const {
        for (Index i = i0; i <= i1; ++i) {
            const Complex x = h(i, p);
            const Complex y = h(i, q);
            h(i, p) = x * c + y * std::conj(s);
            h(i, q) = -x * s + y * c;
        }
    }
};

class HessenbergQR {
public:
    explicit HessenbergQR(ComplexMatrix& h) : h_(h), n_(h.rows()) {
        norm_ = h_.cwiseAbs().sum();
    }

    std::vector<Complex> run() {
        const long max_iterations = 30L * static_cast<long>(n_);
        long total = 0;
        int iter = 0;
        Index iu = n_ - 1;
        while (true) {
            while (iu > 0) {
                if (!negligible(iu - 1)) break;
                iter = 0;
                --iu;
            }
            if (iu == 0) break;
            ++iter;
            if (++total > max_iterations) {
                throw NumericalError("QR iteration failed to converge after " + std::to_string(max_iterations) +
                                     " iterations (n=" + std::to_string(n_) + ")");
            }
            Index il = iu - 1;
            while (il > 0 && !negligible(il - 1)) --il;
            sweep(il, iu, shift(iu, iter));
        }
        std::vector<Complex> out(static_cast<std::size_t>(n_));
        for (Index i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = h_(i, i);
        return out;
    }

private:
    ComplexMatrix& h_;
    Index n_;
    double norm_;

    // Is the subdiagonal entry h(i+1, i) negligible? Zeroes it if so.
    bool negligible(Index i) {
        const double sd = abs1(h_(i + 1, i));
        double d = abs1(h_(i, i)) + abs1(h_(i + 1, i + 1));
        if (d == 0.0) d = norm_;
        if (sd <= std::numeric_limits<double>::epsilon() * d) {
            h_(i + 1, i) = 0.0;
            return true;
        }
        return false;
    }

    // Wilkinson shift: the eigenvalue of the trailing 2x2 block closest to
    // its last diagonal entry. Ad hoc shifts break rare cycles.
    Complex shift(Index iu, int iter) const {
        if ((iter == 10 || iter == 30) && iu >= 2) {
            return std::abs(h_(iu, iu - 1).real()) + std::abs(h_(iu - 1, iu - 2).real());
        }
        Complex t00 = h_(iu - 1, iu - 1);
        Complex t01 = h_(iu - 1, iu);
        Complex t10 = h_(iu, iu - 1);
        Complex t11 = h_(iu, iu);
        const double scale = abs1(t00) + abs1(t01) + abs1(t10) + abs1(t11);
        if (scale == 0.0) return 0.0;
        t00 /= scale;
        t01 /= scale;
        t10 /= scale;
        t11 /= scale;
        const Complex b = t01 * t10;
        const Complex c = t00 - t11;
        const Complex disc = std::sqrt(c * c + 4.0 * b);
        const Complex det = t00 * t11 - b;
        const Complex trace = t00 + t11;
        Complex e1 = (trace + disc) / 2.0;
        Complex e2 = (trace - disc) / 2.0;
        // Recover the smaller root from the product to avoid cancellation.
        if (abs1(e1) > abs1(e2)) {
            e2 = det / e1;
        } else if (e2 != 0.0) {
            e1 = det / e2;
        }
        return scale * (abs1(e1 - t11) < abs1(e2 - t11) ? e1 : e2);
    }

    void sweep(Index il, Index iu, Complex mu) {
        Givens g = Givens::make(h_(il, il) - mu, h_(il + 1, il));
        g.apply_left(h_, il, il + 1, il, iu);
        g.apply_right(h_, il, il + 1, il, std::min(il + 2, iu));
        for (Index k = il + 1; k < iu; ++k) {
            g = Givens::make(h_(k, k - 1), h_(k + 1, k - 1));
            g.apply_left(h_, k, k + 1, k - 1, iu);
            h_(k + 1, k - 1) = 0.0;
            g.apply_right(h_, k, k + 1, il, std::min(k + 2, iu));
        }
    }
};

}  // namespace

void sort_spectrum(std::vector<Complex>& values) {
    std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

Spectrum eigenvalues(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw ConfigError("eigenvalues: matrix is not square");
    if (a.rows() > kMaxEigenDimension) throw ConfigError("eigenvalues: dimension exceeds dense budget");
    Spectrum s;
    if (a.rows() == 0) return s;
    if (!a.allFinite()) throw NumericalError("eigenvalues: matrix has non-finite entries");
    ComplexMatrix h = a;
    balance(h);
    hessenberg(h);
    s.eigenvalues = HessenbergQR(h).run();
    sort_spectrum(s.eigenvalues);
    return s;
}

double conjugate_closure(const Spectrum& s) {
    const auto& ev = s.eigenvalues;
    std::vector<bool> used(ev.size(), false);
    double worst = 0.0;
    for (const Complex lambda : ev) {
        std::size_t best = ev.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < ev.size(); ++j) {
            if (used[j]) continue;
            const double dist = std::abs(lambda - std::conj(ev[j]));
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_dist);
    }
    return worst;
}

std::vector<Complex> lowest(const Spectrum& s, std::size_t count) {
    const std::size_t k = std::min(count, s.eigenvalues.size());
    return {s.eigenvalues.begin(), s.eigenvalues.begin() + static_cast<std::ptrdiff_t>(k)};
}

}  // namespace pdmsusy::discrete
