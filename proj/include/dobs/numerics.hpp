#pragma once

#include <Eigen/Dense>
#include <utility>

#include "dobs/errors.hpp"

namespace dobs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

// Eigenvalues sorted ascending by real part, then imaginary part.
using Spectrum = ComplexVector;

// Monic polynomial s^n + c[0] s^{n-1} + ... + c[n-2] s + c[n-1].
struct Polynomial {
    Vector coefficients;

    Eigen::Index degree() const { return coefficients.size(); }
};

inline constexpr double kDefaultRankTol = 1e-9;

/// Eigenvalues of a square matrix in a deterministic order
/// (ascending real part, ties broken by imaginary part).
Spectrum spectrum(const Matrix& A);

/// (max, min) of the real parts of the spectrum of A.
std::pair<double, double> real_part_bounds(const Matrix& A);

/// Kronecker product A (x) B.
Matrix kron(const Matrix& A, const Matrix& B);

/// Matrix exponential e^{A t}.
Matrix expm(const Matrix& A, double t);

/// Numerical rank: number of singular values above tol * sigma_max.
Eigen::Index rank_with_tolerance(const Matrix& A, double tol = kDefaultRankTol);

}  // namespace dobs
