#include "dobs/riccati.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <string>

#include "dobs/leader.hpp"

namespace dobs {

namespace {

using ComplexMatrix = Eigen::MatrixXcd;

double care_residual(const Matrix& S, const Matrix& C, const Matrix& P) {
    const Matrix F = P * C.transpose();
    return (P * S.transpose() + S * P - F * F.transpose() +
            Matrix::Identity(P.rows(), P.cols()))
        .norm();
}

void require_care_dims(const CareProblem& prob) {
    if (prob.S.rows() != prob.S.cols() || prob.S.rows() < 1) {
        throw DimensionError("solve_care: S must be square and non-empty");
    }
    if (prob.C.cols() != prob.S.rows() || prob.C.rows() < 1) {
        throw DimensionError("solve_care: C must have " + std::to_string(prob.S.rows()) +
                             " columns");
    }
}

// PBH test over the closed right half plane.
bool is_detectable(const Matrix& S, const Matrix& C) {
    const Eigen::Index m = S.rows();
    const Spectrum ev = spectrum(S);
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        if (ev(k).real() < -1e-9) continue;
        ComplexMatrix pencil(m + C.rows(), m);
        pencil.topRows(m) = S.cast<std::complex<double>>();
        pencil.topRows(m).diagonal().array() -= ev(k);
        pencil.bottomRows(C.rows()) = C.cast<std::complex<double>>();
        Eigen::JacobiSVD<ComplexMatrix> svd(pencil);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-8 * sv(0)) return false;
    }
    return true;
}

// Stable-invariant-subspace extraction through the matrix sign function of
// the Hamiltonian [[S^T, C^T C], [I, -S]] (Byers' determinant-scaled Newton
// iteration for the sign, then a least-squares solve for P).
Matrix hamiltonian_subspace_solve(const Matrix& S, const Matrix& C) {
    const Eigen::Index m = S.rows();
    Matrix H(2 * m, 2 * m);
    H.topLeftCorner(m, m) = S.transpose();
    H.topRightCorner(m, m) = C.transpose() * C;
    H.bottomLeftCorner(m, m) = Matrix::Identity(m, m);
    H.bottomRightCorner(m, m) = -S;

    Matrix Z = H;
    const int max_iterations = 100;
    const double dim = static_cast<double>(2 * m);
    int iteration = 0;
    double step = std::numeric_limits<double>::infinity();
    while (iteration < max_iterations && step > 1e-11 * std::max(1.0, Z.norm())) {
        Eigen::PartialPivLU<Matrix> lu(Z);
        const double abs_det = std::abs(lu.determinant());
        if (!std::isfinite(abs_det) || abs_det == 0.0) {
            throw NumericalError(
                "solve_care: Hamiltonian sign iteration hit a singular iterate after " +
                std::to_string(iteration) + " iterations (eigenvalues too close to the "
                "imaginary axis)");
        }
        const double ck = std::pow(abs_det, -1.0 / dim);
        const Matrix Z_scaled = Z * ck;
        Matrix Z_next = 0.5 * (Z_scaled + Eigen::PartialPivLU<Matrix>(Z_scaled).inverse());
        step = (Z_next - Z).norm();
        Z = std::move(Z_next);
        ++iteration;
    }
    if (iteration == max_iterations) {
        throw NumericalError("solve_care: sign iteration did not converge in " +
                             std::to_string(max_iterations) + " iterations");
    }
    // sign(H)^2 = I; a large defect means the stable/unstable gap is below
    // resolvable precision.
    if ((Z * Z - Matrix::Identity(2 * m, 2 * m)).norm() > 1e-6 * (1.0 + Z.squaredNorm())) {
        throw NumericalError(
            "solve_care: invariant subspace extraction failed, stable/unstable gap too "
            "small after " + std::to_string(iteration) + " sign iterations");
    }

    const Matrix W11 = Z.topLeftCorner(m, m);
    const Matrix W12 = Z.topRightCorner(m, m);
    const Matrix W21 = Z.bottomLeftCorner(m, m);
    const Matrix W22 = Z.bottomRightCorner(m, m);
    Matrix lhs(2 * m, m);
    Matrix rhs(2 * m, m);
    lhs << W12, W22 + Matrix::Identity(m, m);
    rhs << W11 + Matrix::Identity(m, m), W21;
    Eigen::JacobiSVD<Matrix> svd(lhs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.solve(rhs);
}

Matrix lyapunov_from_schur(const Eigen::ComplexSchur<ComplexMatrix>& schur, const Matrix& W) {
    const Eigen::Index m = W.rows();
    const ComplexMatrix& U = schur.matrixU();
    const ComplexMatrix& T = schur.matrixT();
    ComplexMatrix Ct = -U.adjoint() * W.cast<std::complex<double>>() * U;
    ComplexMatrix Y = ComplexMatrix::Zero(m, m);
    for (Eigen::Index j = m - 1; j >= 0; --j) {
        ComplexVector rhs = Ct.col(j);
        for (Eigen::Index k = j + 1; k < m; ++k) {
            rhs -= std::conj(T(j, k)) * Y.col(k);
        }
        ComplexMatrix shifted = T;
        shifted.diagonal().array() += std::conj(T(j, j));
        Y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
    }
    Matrix X = (U * Y * U.adjoint()).real();
    return 0.5 * (X + X.transpose());
}

struct NewtonResult {
    bool ok = false;
    double residual = std::numeric_limits<double>::infinity();
    double closed_loop_max_re = std::numeric_limits<double>::infinity();
};

// Kleinman iteration: A_k = S - P_k C^T C, then
// A_k P_{k+1} + P_{k+1} A_k^T + (I + P_k C^T C P_k) = 0.
// Fails (returns ok=false) when an iterate's closed loop is not Hurwitz.
NewtonResult newton_refine(const Matrix& S, const Matrix& C, Matrix& P, double target,
                           int max_iterations) {
    const Eigen::Index m = S.rows();
    const Matrix I = Matrix::Identity(m, m);
    NewtonResult result;
    Matrix best = P;
    double best_res = care_residual(S, C, P);
    double prev_res = best_res;
    for (int iter = 0; iter < max_iterations; ++iter) {
        if (best_res <= target) break;
        const Matrix F = P * C.transpose();
        const Matrix A_k = S - F * C;
        Eigen::ComplexSchur<ComplexMatrix> schur(A_k.cast<std::complex<double>>());
        if (schur.info() != Eigen::Success) return result;
        double max_re = -std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < m; ++i) {
            max_re = std::max(max_re, schur.matrixT()(i, i).real());
        }
        result.closed_loop_max_re = max_re;
        if (max_re >= 0.0) return result;
        const Matrix W = I + F * F.transpose();
        P = lyapunov_from_schur(schur, W);
        const double res = care_residual(S, C, P);
        if (res < best_res) {
            best = P;
            best_res = res;
        }
        if (res <= target) break;
        if (iter > 0 && res >= 0.5 * prev_res) break;  // hit the rounding floor
        prev_res = res;
    }
    P = best;
    result.ok = true;
    result.residual = best_res;
    return result;
}

void validate_solution(const CareProblem& prob, CareSolution& sol) {
    sol.residual = care_residual(prob.S, prob.C, sol.P);
    const double residual_bound = 1e-8 * (1.0 + prob.S.squaredNorm());
    if (sol.residual > residual_bound) {
        throw NumericalError("solve_care: residual " + std::to_string(sol.residual) +
                             " exceeds bound " + std::to_string(residual_bound));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sol.P, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues()(0) <= 0.0) {
        throw NumericalError("solve_care: solution is not positive definite (min eigenvalue " +
                             std::to_string(eig.eigenvalues()(0)) + ")");
    }
    sol.closed_loop_max_re =
        real_part_bounds(prob.S - sol.P * prob.C.transpose() * prob.C).first;
    if (sol.closed_loop_max_re >= 0.0) {
        throw NumericalError("solve_care: closed loop is not Hurwitz (max Re = " +
                             std::to_string(sol.closed_loop_max_re) + ")");
    }
}

Matrix canonical_output_matrix(Eigen::Index n, int p) {
    Matrix C = Matrix::Zero(p, n * p);
    C.leftCols(p) = Matrix::Identity(p, p);
    return C;
}

}  // namespace

Matrix solve_lyapunov(const Matrix& A, const Matrix& W) {
    if (A.rows() != A.cols() || W.rows() != W.cols() || A.rows() != W.rows()) {
        throw DimensionError("solve_lyapunov: A and W must be square with matching order");
    }
    Eigen::ComplexSchur<ComplexMatrix> schur(A.cast<std::complex<double>>());
    if (schur.info() != Eigen::Success) {
        throw NumericalError("solve_lyapunov: Schur decomposition failed");
    }
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        if (schur.matrixT()(i, i).real() >= 0.0) {
            throw NumericalError("solve_lyapunov: A is not Hurwitz");
        }
    }
    return lyapunov_from_schur(schur, W);
}

CareSolution solve_care(const CareProblem& prob) {
    require_care_dims(prob);
    if (!prob.S.allFinite() || !prob.C.allFinite()) {
        throw DimensionError("solve_care: entries must be finite");
    }
    if (!is_detectable(prob.S, prob.C)) {
        throw std::invalid_argument("solve_care: (C, S) is not detectable");
    }

    CareSolution sol;
    Matrix P = hamiltonian_subspace_solve(prob.S, prob.C);
    sol.asymmetry = (P - P.transpose()).norm();
    P = 0.5 * (P + P.transpose());
    const NewtonResult nr = newton_refine(prob.S, prob.C, P, 1e-10, 50);
    if (!nr.ok) {
        throw NumericalError(
            "solve_care: Newton refinement left the stabilizing cone (closed-loop max Re = " +
            std::to_string(nr.closed_loop_max_re) + ")");
    }
    sol.P = P;
    validate_solution(prob, sol);
    return sol;
}

Matrix gain(const Matrix& P, const Matrix& C) {
    if (P.rows() != P.cols() || C.cols() != P.rows()) {
        throw DimensionError("gain: P must be square and C must have matching columns");
    }
    return P * C.transpose();
}

std::pair<Matrix, Matrix> scheduled_gain(const Vector& alpha_i, GainCache& cache, int p) {
    if (!alpha_i.allFinite()) {
        throw DimensionError("scheduled_gain: alpha must be finite");
    }
    if (p < 1) {
        throw DimensionError("scheduled_gain: need p >= 1");
    }
    const Eigen::Index n = alpha_i.size();
    const Matrix C = canonical_output_matrix(n, p);

    if (cache.valid && cache.last_alpha.size() == n &&
        (alpha_i - cache.last_alpha).norm() <=
            cache.recompute_tol * (1.0 + cache.last_alpha.norm())) {
        return {gain(cache.last_P, C), cache.last_P};
    }

    const Matrix S = companion(alpha_i, p);
    Matrix P;
    bool solved = false;
    if (cache.valid && cache.last_P.rows() == n * p) {
        P = cache.last_P;
        const NewtonResult nr = newton_refine(S, C, P, 1e-10, 50);
        solved = nr.ok && nr.residual <= 1e-8 * (1.0 + S.squaredNorm());
    }
    if (!solved) {
        P = solve_care(CareProblem{S, C}).P;
    }
    cache.last_alpha = alpha_i;
    cache.last_P = P;
    cache.valid = true;
    ++cache.solve_count;
    return {gain(P, C), P};
}

}  // namespace dobs
