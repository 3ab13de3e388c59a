#include "dobs/graph.hpp"

#include <cmath>
#include <queue>
#include <string>

namespace dobs {

Digraph Digraph::from_edges(int n_followers,
                            const std::vector<std::tuple<int, int, double>>& edges) {
    if (n_followers < 1) {
        throw DimensionError("Digraph: need at least one follower");
    }
    Digraph g;
    g.n_followers = n_followers;
    g.weights = Matrix::Zero(n_followers + 1, n_followers + 1);
    for (const auto& [from, to, w] : edges) {
        if (from < 0 || from > n_followers || to < 0 || to > n_followers) {
            throw DimensionError("Digraph: edge (" + std::to_string(from) + ", " +
                                 std::to_string(to) + ") references a node outside 0.." +
                                 std::to_string(n_followers));
        }
        if (to == 0) {
            throw DimensionError("Digraph: the leader (node 0) cannot receive an edge");
        }
        if (from == to) {
            throw DimensionError("Digraph: self-loop on node " + std::to_string(from));
        }
        if (g.weights(to, from) != 0.0) {
            throw DimensionError("Digraph: duplicate edge (" + std::to_string(from) + ", " +
                                 std::to_string(to) + ")");
        }
        if (!std::isfinite(w) || w < 0.0) {
            throw DimensionError("Digraph: edge (" + std::to_string(from) + ", " +
                                 std::to_string(to) + ") has invalid weight");
        }
        g.weights(to, from) = w;
    }
    g.validate();
    return g;
}

void Digraph::validate() const {
    if (n_followers < 1) {
        throw DimensionError("Digraph: need at least one follower");
    }
    if (weights.rows() != n_nodes() || weights.cols() != n_nodes()) {
        throw DimensionError("Digraph: weight matrix must be " + std::to_string(n_nodes()) +
                             "x" + std::to_string(n_nodes()));
    }
    if (!weights.allFinite() || (weights.array() < 0.0).any()) {
        throw DimensionError("Digraph: weights must be finite and non-negative");
    }
    if ((weights.row(0).array() != 0.0).any()) {
        throw DimensionError("Digraph: the leader (node 0) cannot receive edges");
    }
    for (int i = 0; i < n_nodes(); ++i) {
        if (weights(i, i) != 0.0) {
            throw DimensionError("Digraph: self-loop on node " + std::to_string(i));
        }
    }
}

NetworkMatrices build_network_matrices(const Digraph& g) {
    g.validate();
    const int m = g.n_nodes();
    NetworkMatrices net;
    net.laplacian = -g.weights;
    for (int i = 0; i < m; ++i) {
        net.laplacian(i, i) = g.weights.row(i).sum();
    }
    net.H = net.laplacian.bottomRightCorner(g.n_followers, g.n_followers);
    net.delta_H = real_part_bounds(net.H).second;
    return net;
}

bool has_spanning_tree(const Digraph& g) {
    g.validate();
    const int m = g.n_nodes();
    std::vector<bool> seen(m, false);
    std::queue<int> frontier;
    seen[0] = true;
    frontier.push(0);
    while (!frontier.empty()) {
        const int j = frontier.front();
        frontier.pop();
        for (int i = 1; i < m; ++i) {
            if (!seen[i] && g.weights(i, j) > 0.0) {
                seen[i] = true;
                frontier.push(i);
            }
        }
    }
    for (int i = 1; i < m; ++i) {
        if (!seen[i]) return false;
    }
    return true;
}

bool is_m_matrix(const Matrix& A) {
    if (A.rows() != A.cols()) {
        throw DimensionError("is_m_matrix: matrix must be square");
    }
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            if (i != j && A(i, j) > 0.0) return false;
        }
    }
    return real_part_bounds(A).second > 0.0;
}

}  // namespace dobs
