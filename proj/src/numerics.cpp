#include "dobs/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <vector>

namespace dobs {

namespace {

void require_square(const Matrix& A, const char* op) {
    if (A.rows() != A.cols()) {
        throw DimensionError(std::string(op) + ": matrix must be square, got " +
                             std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
    }
}

}  // namespace

Spectrum spectrum(const Matrix& A) {
    require_square(A, "spectrum");
    Eigen::EigenSolver<Matrix> solver(A, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("spectrum: eigenvalue iteration did not converge (Eigen reported "
                             "failure after its internal iteration limit of 40n sweeps)");
    }
    ComplexVector ev = solver.eigenvalues();
    std::vector<std::complex<double>> sorted(ev.data(), ev.data() + ev.size());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return Eigen::Map<const ComplexVector>(sorted.data(), static_cast<Eigen::Index>(sorted.size()));
}

std::pair<double, double> real_part_bounds(const Matrix& A) {
    const Spectrum ev = spectrum(A);
    // Sorted ascending by real part: min is first, max is last.
    return {ev(ev.size() - 1).real(), ev(0).real()};
}

Matrix kron(const Matrix& A, const Matrix& B) {
    return Eigen::kroneckerProduct(A, B);
}

Matrix expm(const Matrix& A, double t) {
    require_square(A, "expm");
    Matrix result = (A * t).exp();
    if (!result.allFinite()) {
        throw NumericalError("expm: overflow, ||A t|| = " + std::to_string((A * t).norm()));
    }
    return result;
}

Eigen::Index rank_with_tolerance(const Matrix& A, double tol) {
    if (!(tol > 0.0)) {
        throw DimensionError("rank_with_tolerance: tol must be > 0");
    }
    if (A.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(A);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cutoff = tol * sv(0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++rank;
    }
    return rank;
}

}  // namespace dobs
