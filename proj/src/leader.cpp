#include "dobs/leader.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>
#include <vector>

namespace dobs {

void LeaderSystem::validate() const {
    if (S0.rows() != S0.cols() || S0.rows() < 1) {
        throw DimensionError("LeaderSystem: S0 must be square and non-empty");
    }
    if (C0.cols() != S0.rows() || C0.rows() < 1) {
        throw DimensionError("LeaderSystem: C0 must have " + std::to_string(S0.rows()) +
                             " columns");
    }
    if (v0_init.size() != S0.rows()) {
        throw DimensionError("LeaderSystem: v0_init must have length " +
                             std::to_string(S0.rows()));
    }
    if (!S0.allFinite() || !C0.allFinite() || !v0_init.allFinite()) {
        throw DimensionError("LeaderSystem: entries must be finite");
    }
}

Polynomial minimal_polynomial(const Matrix& S0, double tol) {
    if (S0.rows() != S0.cols()) {
        throw DimensionError("minimal_polynomial: matrix must be square");
    }
    if (!(tol > 0.0)) {
        throw DimensionError("minimal_polynomial: tol must be > 0");
    }
    const Eigen::Index q = S0.rows();

    // Powers I, S0, S0^2, ... and their column-normalized vectorizations.
    std::vector<Matrix> powers;
    powers.push_back(Matrix::Identity(q, q));
    Matrix krylov(q * q, q + 1);
    auto push_column = [&](Eigen::Index k) {
        const Matrix& P = powers[static_cast<size_t>(k)];
        const double scale = std::max(1.0, P.norm());
        krylov.col(k) = Eigen::Map<const Vector>(P.data(), q * q) / scale;
    };
    push_column(0);

    Eigen::Index n = 0;
    for (Eigen::Index k = 1; k <= q; ++k) {
        powers.push_back(powers.back() * S0);
        push_column(k);
        if (rank_with_tolerance(krylov.leftCols(k + 1), tol) < k + 1) {
            n = k;
            break;
        }
    }
    // Cayley-Hamilton guarantees dependence at k = q.
    if (n == 0) n = q;

    // S0^n = -(alpha_1 S0^{n-1} + ... + alpha_n I); solve in the scaled basis.
    Matrix basis(q * q, n);
    Vector scales(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Matrix& P = powers[static_cast<size_t>(n - 1 - j)];
        scales(j) = std::max(1.0, P.norm());
        basis.col(j) = Eigen::Map<const Vector>(P.data(), q * q) / scales(j);
    }
    Eigen::JacobiSVD<Matrix> svd(basis, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e12) {
        throw NumericalError(
            "minimal_polynomial: coefficient solve is ill-conditioned (condition number > "
            "1e12); consider exact or symbolic input");
    }
    const Vector rhs = -Eigen::Map<const Vector>(powers[static_cast<size_t>(n)].data(), q * q);
    Vector alpha = svd.solve(rhs);
    alpha.array() /= scales.array();

    // Residual guarantee from the spec of this operation.
    Matrix residual = powers[static_cast<size_t>(n)];
    for (Eigen::Index j = 0; j < n; ++j) {
        residual += alpha(j) * powers[static_cast<size_t>(n - 1 - j)];
    }
    const double bound = tol * std::max(1.0, std::pow(S0.norm(), static_cast<double>(n)));
    if (residual.norm() > bound) {
        throw NumericalError("minimal_polynomial: residual " + std::to_string(residual.norm()) +
                             " exceeds " + std::to_string(bound) +
                             "; consider exact or symbolic input");
    }
    return Polynomial{alpha};
}

Matrix companion(const Vector& alpha, int p) {
    const Eigen::Index n = alpha.size();
    if (n < 1) throw DimensionError("companion: need degree >= 1");
    if (p < 1) throw DimensionError("companion: need p >= 1");
    Matrix M = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        M(i, i + 1) = 1.0;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        M(n - 1, j) = -alpha(n - 1 - j);
    }
    if (p == 1) return M;
    return kron(M, Matrix::Identity(p, p));
}

Vector companion_apply(const Vector& alpha, int p, const Vector& x) {
    const Eigen::Index n = alpha.size();
    if (x.size() != n * p) {
        throw DimensionError("companion_apply: state must have length n*p");
    }
    Vector y(x.size());
    y.head((n - 1) * p) = x.tail((n - 1) * p);
    y.tail(p).setZero();
    for (Eigen::Index k = 0; k < n; ++k) {
        // Bottom block row: block k carries -alpha_{n-k}.
        y.tail(p) -= alpha(n - 1 - k) * x.segment(k * p, p);
    }
    return y;
}

CanonicalLift canonical_lift(const LeaderSystem& sys, double tol) {
    sys.validate();
    const Polynomial mp = minimal_polynomial(sys.S0, tol);
    CanonicalLift lift;
    lift.n = static_cast<int>(mp.degree());
    lift.p = sys.p();
    lift.alpha0 = mp.coefficients;
    lift.S_script0 = companion(lift.alpha0, lift.p);
    Matrix selector = Matrix::Zero(1, lift.n);
    selector(0, 0) = 1.0;
    lift.C_script0 = kron(selector, Matrix::Identity(lift.p, lift.p));
    lift.zeta0_init = Vector(lift.dim());
    Vector power_v = sys.v0_init;  // S0^k v0_init
    for (int k = 0; k < lift.n; ++k) {
        lift.zeta0_init.segment(k * lift.p, lift.p) = sys.C0 * power_v;
        power_v = sys.S0 * power_v;
    }
    return lift;
}

std::pair<Vector, Vector> leader_trajectory(const LeaderSystem& sys, double t) {
    sys.validate();
    Vector v0 = expm(sys.S0, t) * sys.v0_init;
    return {v0, sys.C0 * v0};
}

}  // namespace dobs
