#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "neteffect/rng.hpp"
#include "neteffect/types.hpp"

namespace test_helpers {

using neteffect::EdgeCount;
using neteffect::Graph;
using neteffect::LabelSet;
using neteffect::NodeId;
using neteffect::Rng;
using neteffect::SparseWeightedMatrix;

inline SparseWeightedMatrix dense_to_csr(const Eigen::MatrixXd& a) {
    SparseWeightedMatrix m;
    m.n = static_cast<NodeId>(a.rows());
    m.offsets.assign(1, 0);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (a(i, j) != 0.0) {
                m.cols.push_back(static_cast<NodeId>(j));
                m.values.push_back(a(i, j));
            }
        }
        m.offsets.push_back(static_cast<std::int64_t>(m.cols.size()));
    }
    return m;
}

inline Eigen::MatrixXd csr_to_dense(const SparseWeightedMatrix& m) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m.n, m.n);
    for (NodeId i = 0; i < m.n; ++i) {
        const auto cols = m.row_cols(i);
        const auto vals = m.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) a(i, cols[k]) = vals[k];
    }
    return a;
}

inline Graph graph_from_pairs(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges) {
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph::from_edges(n, edges);
}

inline Graph random_graph(NodeId n, EdgeCount m, std::uint64_t seed) {
    Rng rng(seed);
    std::set<std::pair<NodeId, NodeId>> edges;
    while (static_cast<EdgeCount>(edges.size()) < m) {
        NodeId u = static_cast<NodeId>(rng.uniform_below(n));
        NodeId v = static_cast<NodeId>(rng.uniform_below(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        edges.insert({u, v});
    }
    return Graph::from_edges(n, {edges.begin(), edges.end()});
}

/// Eigenvalues of a symmetric 2x2 or 3x3 matrix straight from the
/// characteristic polynomial (quadratic formula / trigonometric cubic).
inline std::vector<double> char_poly_eigenvalues(const Eigen::MatrixXd& a) {
    if (a.rows() == 2) {
        const double mean = 0.5 * (a(0, 0) + a(1, 1));
        const double disc = std::sqrt(0.25 * (a(0, 0) - a(1, 1)) * (a(0, 0) - a(1, 1)) +
                                      a(0, 1) * a(0, 1));
        return {mean + disc, mean - disc};
    }
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (p1 == 0.0) return {a(0, 0), a(1, 1), a(2, 2)};
    const double q = a.trace() / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    Eigen::Matrix3d b = (a - q * Eigen::Matrix3d::Identity()) / p;
    double r = b.determinant() / 2.0;
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    return {e1, 3.0 * q - e1 - e3, e3};
}

inline double char_poly_spectral_radius(const Eigen::MatrixXd& a) {
    double radius = 0.0;
    for (const double e : char_poly_eigenvalues(a)) radius = std::max(radius, std::abs(e));
    return radius;
}

inline LabelSet make_labels(const std::vector<NodeId>& labels, NodeId num_classes) {
    LabelSet set;
    set.labels = labels;
    set.num_classes = num_classes;
    for (NodeId k = 0; k < num_classes; ++k) set.class_names.push_back(std::to_string(k));
    return set;
}

inline neteffect::CompatibilityMatrix residual_from(const Eigen::MatrixXd& m) {
    auto h = neteffect::CompatibilityMatrix::zeros(static_cast<NodeId>(m.rows()),
                                                   neteffect::CompatibilityForm::residual);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            h.at(static_cast<NodeId>(i), static_cast<NodeId>(j)) = m(i, j);
    return h;
}

/// Fixed point of B = E + f A B H via the dense linear system
/// (I - f (H^T (x) A)) vec(B) = vec(E), columns stacked.
inline Eigen::MatrixXd dense_fixed_point(const Eigen::MatrixXd& a, const Eigen::MatrixXd& h,
                                         const Eigen::MatrixXd& e, double f) {
    const Eigen::Index n = a.rows();
    const Eigen::Index c = h.rows();
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n * c, n * c);
    for (Eigen::Index u = 0; u < c; ++u)
        for (Eigen::Index v = 0; v < c; ++v)
            system.block(u * n, v * n, n, n) -= f * h(v, u) * a;
    Eigen::VectorXd rhs(n * c);
    for (Eigen::Index u = 0; u < c; ++u) rhs.segment(u * n, n) = e.col(u);
    const Eigen::VectorXd solution = system.partialPivLu().solve(rhs);
    Eigen::MatrixXd b(n, c);
    for (Eigen::Index u = 0; u < c; ++u) b.col(u) = solution.segment(u * n, n);
    return b;
}

/// Random sparse symmetric adjacency with weights in (0, 1], a residual
/// compatibility matrix scaled to the requested spectral radius, and residual
/// beliefs from a random prior subset.
struct PropagationInstance {
    SparseWeightedMatrix a;
    Eigen::MatrixXd a_dense;
    neteffect::CompatibilityMatrix h;
    Eigen::MatrixXd h_dense;
    neteffect::BeliefMatrix ehat;
    Eigen::MatrixXd e_dense;
};

inline PropagationInstance random_propagation_instance(NodeId n, NodeId c, std::uint64_t seed,
                                                       double h_radius) {
    PropagationInstance inst;
    Rng rng(seed);
    inst.a_dense = Eigen::MatrixXd::Zero(n, n);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j)
            if (rng.uniform01() < 0.3) inst.a_dense(i, j) = inst.a_dense(j, i) = rng.uniform01();
    inst.a = dense_to_csr(inst.a_dense);

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(c, c);
    for (NodeId i = 0; i < c; ++i)
        for (NodeId j = 0; j < c; ++j) h(i, j) = rng.gaussian();
    const double radius = h.eigenvalues().array().abs().maxCoeff();
    if (radius > 0) h *= h_radius / radius;
    inst.h_dense = h;
    inst.h = residual_from(h);

    const double uniform = 1.0 / static_cast<double>(c);
    inst.e_dense = Eigen::MatrixXd::Zero(n, c);
    bool any = false;
    for (NodeId i = 0; i < n; ++i) {
        if (rng.uniform01() < 0.4) {
            const NodeId cls = static_cast<NodeId>(i % c);
            for (NodeId u = 0; u < c; ++u) inst.e_dense(i, u) = (u == cls ? 1.0 : 0.0) - uniform;
            any = true;
        }
    }
    if (!any)
        for (NodeId u = 0; u < c; ++u) inst.e_dense(0, u) = (u == 0 ? 1.0 : 0.0) - uniform;
    inst.ehat = neteffect::BeliefMatrix::zeros(n, c, true);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId u = 0; u < c; ++u) inst.ehat.at(i, u) = inst.e_dense(i, u);
    return inst;
}

}  // namespace test_helpers
