#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace neteffect {

using NodeId = std::int32_t;
using EdgeCount = std::int64_t;

inline constexpr NodeId kUnlabeled = -1;

/// Immutable undirected simple graph in CSR form. Both directions of every
/// edge are stored and each neighbor list is sorted ascending.
class Graph {
public:
    Graph() = default;

    /// Build from a clean undirected edge list: u < v, no duplicates, no
    /// self-loops, all ids in [0, n). Loaders and generators are responsible
    /// for normalizing their input first.
    static Graph from_edges(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges);

    NodeId num_nodes() const { return n_; }
    EdgeCount num_edges() const { return m_; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }
    NodeId degree(NodeId u) const {
        return static_cast<NodeId>(offsets_[u + 1] - offsets_[u]);
    }
    bool has_edge(NodeId u, NodeId v) const;

    const std::vector<std::int64_t>& offsets() const { return offsets_; }
    const std::vector<NodeId>& adjacency() const { return adj_; }

    /// Full-scan structural check: sorted rows, symmetry, no self-loops or
    /// duplicates, degree sum = 2m.
    bool validate() const;

    /// Undirected edges as (u, v) pairs with u < v, sorted.
    std::vector<std::pair<NodeId, NodeId>> edge_list() const;

private:
    NodeId n_ = 0;
    EdgeCount m_ = 0;
    std::vector<std::int64_t> offsets_{0};
    std::vector<NodeId> adj_;
};

/// Ground-truth class assignment. Class ids are contiguous in [0, c), remapped
/// from the original label strings in first-seen order; the original names are
/// kept for output.
struct LabelSet {
    std::vector<NodeId> labels;             // per node: class id or kUnlabeled
    NodeId num_classes = 0;
    std::vector<std::string> class_names;   // index = class id

    bool is_labeled(NodeId u) const { return labels[u] != kUnlabeled; }
    std::vector<NodeId> labeled_nodes() const;
    std::vector<EdgeCount> class_counts() const;
    EdgeCount labeled_count() const;
};

/// Observed subset of labeled nodes used as priors. Deterministic for a fixed
/// (fraction, seed, stratified) triple.
struct PriorSet {
    std::vector<NodeId> nodes;   // sorted ascending
    double fraction = 0.0;
    std::uint64_t seed = 0;

    /// Per-node membership bitmap of size n.
    std::vector<char> membership(NodeId n) const;
};

/// Dense n x c belief matrix, row-major. In plain form prior rows are one-hot
/// and the rest are uniform 1/c; the centered (residual) form is shifted by
/// -1/c so uniform rows become zero.
struct BeliefMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;
    bool centered = false;

    double& at(std::size_t i, std::size_t k) { return values[i * cols + k]; }
    double at(std::size_t i, std::size_t k) const { return values[i * cols + k]; }
    const double* row(std::size_t i) const { return values.data() + i * cols; }
    double* row(std::size_t i) { return values.data() + i * cols; }

    static BeliefMatrix zeros(std::size_t rows, std::size_t cols, bool centered);
};

enum class CompatibilityForm { residual, display };

/// c x c class-interaction matrix. Display form rows sum to 1; residual form
/// is display - 1/c with rows summing to 0.
struct CompatibilityMatrix {
    NodeId classes = 0;
    std::vector<double> values;  // row-major
    CompatibilityForm form = CompatibilityForm::residual;

    double& at(NodeId i, NodeId j) { return values[static_cast<std::size_t>(i) * classes + j]; }
    double at(NodeId i, NodeId j) const { return values[static_cast<std::size_t>(i) * classes + j]; }

    static CompatibilityMatrix zeros(NodeId classes, CompatibilityForm form);
    /// Row-wise argmax, ties broken toward the lower class id.
    std::vector<NodeId> row_argmax() const;
};

/// CSR matrix sharing (a subset of) a Graph's sparsity pattern, with a real
/// weight per stored entry. Carrier for walk counts, the transformed
/// proximity matrix and the emphasis matrix.
struct SparseWeightedMatrix {
    NodeId n = 0;
    std::vector<std::int64_t> offsets{0};
    std::vector<NodeId> cols;
    std::vector<double> values;

    std::int64_t nnz() const { return static_cast<std::int64_t>(cols.size()); }
    std::span<const NodeId> row_cols(NodeId u) const {
        return {cols.data() + offsets[u], cols.data() + offsets[u + 1]};
    }
    std::span<const double> row_values(NodeId u) const {
        return {values.data() + offsets[u], values.data() + offsets[u + 1]};
    }

    /// The adjacency itself with unit weights.
    static SparseWeightedMatrix unit_weights(const Graph& g);
    SparseWeightedMatrix transposed() const;
};

}  // namespace neteffect
