#pragma once

#include "dobs/numerics.hpp"

namespace dobs {

// Autonomous signal generator: v0' = S0 v0, y0 = C0 v0.
struct LeaderSystem {
    Matrix S0;       // q x q
    Matrix C0;       // p x q
    Vector v0_init;  // q

    int q() const { return static_cast<int>(S0.rows()); }
    int p() const { return static_cast<int>(C0.rows()); }

    void validate() const;
};

// Observable-canonical realization of the leader output: the minimal
// polynomial coefficients together with the lifted pair and the initial
// state of the stacked output-derivative vector.
struct CanonicalLift {
    int n = 0;  // minimal polynomial degree
    int p = 0;  // output dimension
    Vector alpha0;      // (alpha_1, ..., alpha_n), monic convention
    Matrix S_script0;   // pn x pn, companion(alpha0) (x) I_p
    Matrix C_script0;   // p x pn, [1 0 ... 0] (x) I_p
    Vector zeta0_init;  // pn, block k = C0 S0^k v0_init

    int dim() const { return p * n; }
};

/// Least-degree monic polynomial annihilating S0. The first power of S0 that
/// is linearly dependent on the lower powers fixes the degree; the
/// coefficients come from a least-squares solve over vectorized powers.
Polynomial minimal_polynomial(const Matrix& S0, double tol = kDefaultRankTol);

/// Block companion matrix of a monic polynomial, Kronecker-expanded:
/// (super-diagonal identity, bottom row (-alpha_n, ..., -alpha_1)) (x) I_p.
Matrix companion(const Vector& alpha, int p);

/// companion(alpha, p) * x without forming the matrix.
Vector companion_apply(const Vector& alpha, int p, const Vector& x);

CanonicalLift canonical_lift(const LeaderSystem& sys, double tol = kDefaultRankTol);

/// Exact state and output at time t: (e^{S0 t} v0_init, C0 e^{S0 t} v0_init).
std::pair<Vector, Vector> leader_trajectory(const LeaderSystem& sys, double t);

}  // namespace dobs
