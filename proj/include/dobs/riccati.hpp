#pragma once

#include "dobs/numerics.hpp"

namespace dobs {

// Data of the filter-type CARE  P S^T + S P - P C^T C P + I = 0.
struct CareProblem {
    Matrix S;  // m x m
    Matrix C;  // p x m, (C, S) detectable
};

struct CareSolution {
    Matrix P;                  // maximal (stabilizing) solution, symmetric positive definite
    double residual = 0.0;     // Frobenius norm of the equation residual at P
    double closed_loop_max_re = 0.0;  // max Re(sigma(S - P C^T C)), negative
    double asymmetry = 0.0;    // ||P - P^T|| before the final symmetrization
};

// Per-agent memo of the last Riccati solve. The solution is continuous in the
// coefficient vector, so nearby coefficients reuse the cached P.
struct GainCache {
    Vector last_alpha;
    Matrix last_P;
    double recompute_tol = 1e-6;
    long solve_count = 0;
    bool valid = false;
};

/// Maximal hermitian solution of the CARE, via the stable invariant subspace
/// of the 2m x 2m Hamiltonian (matrix-sign-function form) polished by
/// Kleinman-Newton sweeps.
CareSolution solve_care(const CareProblem& prob);

/// Output-injection gain F = P C^T.
Matrix gain(const Matrix& P, const Matrix& C);

/// (F_i, P_i) for the companion system of alpha_i, reusing the cache when
/// alpha_i has not drifted past recompute_tol. Fresh solves warm-start Newton
/// from the cached P and fall back to the full subspace method if that fails.
std::pair<Matrix, Matrix> scheduled_gain(const Vector& alpha_i, GainCache& cache, int p);

/// Solves A X + X A^T + W = 0 for symmetric W and Hurwitz A.
/// Throws NumericalError if A has an eigenvalue with non-negative real part.
Matrix solve_lyapunov(const Matrix& A, const Matrix& W);

}  // namespace dobs
