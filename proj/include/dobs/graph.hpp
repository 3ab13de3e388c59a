#pragma once

#include <tuple>
#include <vector>

#include "dobs/numerics.hpp"

namespace dobs {

// Leader-follower communication graph. Node 0 is the leader; nodes 1..N are
// followers. weights(i, j) = a_ij > 0 iff node i receives from node j.
// Row 0 is all zero: the leader never receives.
struct Digraph {
    int n_followers = 0;
    Matrix weights;  // (N+1) x (N+1)

    // edges are (from, to, weight) triples: information flows from -> to.
    static Digraph from_edges(int n_followers,
                              const std::vector<std::tuple<int, int, double>>& edges);

    int n_nodes() const { return n_followers + 1; }

    // Throws DimensionError on self-loops, edges into the leader, negative or
    // non-finite weights, or a shape mismatch.
    void validate() const;
};

struct NetworkMatrices {
    Matrix laplacian;  // (N+1) x (N+1)
    Matrix H;          // trailing N x N block of the Laplacian
    double delta_H;    // min Re(sigma(H))
};

NetworkMatrices build_network_matrices(const Digraph& g);

/// True iff every follower is reachable from the leader along directed edges.
bool has_spanning_tree(const Digraph& g);

/// True iff all off-diagonal entries are <= 0 and min Re(sigma(A)) > 0.
bool is_m_matrix(const Matrix& A);

}  // namespace dobs
