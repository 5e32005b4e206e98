#pragma once

// Dense complex eigensolver: balancing, Householder reduction to upper
// Hessenberg form, then single-shift complex QR with Wilkinson shifts.

#include <vector>

#include <Eigen/Dense>

#include "pdmsusy/expr.hpp"

namespace pdmsusy::discrete {

using ComplexMatrix = Eigen::MatrixXcd;

/// Dense algorithm budget.
inline constexpr int kMaxEigenDimension = 4096;

struct Spectrum {
    /// Sorted by (Re, Im).
    std::vector<Complex> eigenvalues;
};

/// All eigenvalues of a square matrix, sorted by (Re, Im). Throws
/// NumericalError if QR fails to converge within 30 n iterations, and
/// ConfigError for non-square or oversized input.
Spectrum eigenvalues(const ComplexMatrix& a);

/// Total order used for spectra: real part first, then imaginary part.
void sort_spectrum(std::vector<Complex>& values);

/// Greedy nearest-pair matching between the spectrum and its complex
/// conjugate image; returns the largest matched distance. Zero for
/// spectra closed under conjugation.
double conjugate_closure(const Spectrum& s);

/// The `count` eigenvalues with smallest real part (ties by imaginary part).
std::vector<Complex> lowest(const Spectrum& s, std::size_t count);

}  // namespace pdmsusy::discrete
