#include "neteffect/types.hpp"

#include <algorithm>
#include <stdexcept>

namespace neteffect {

Graph Graph::from_edges(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    if (n < 0) throw std::invalid_argument("node count must be nonnegative");
    Graph g;
    g.n_ = n;
    g.m_ = static_cast<EdgeCount>(edges.size());
    std::vector<std::int64_t> degree(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) throw std::invalid_argument("self-loop in edge list");
        ++degree[u];
        ++degree[v];
    }
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    g.adj_.resize(static_cast<std::size_t>(2) * edges.size());
    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges arrive sorted by (u, v); appending in that order keeps every
    // neighbor list sorted without a per-row sort.
    for (const auto& [u, v] : edges) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool Graph::validate() const {
    if (static_cast<std::int64_t>(adj_.size()) != 2 * m_) return false;
    for (NodeId u = 0; u < n_; ++u) {
        const auto nbrs = neighbors(u);
        for (std::size_t k = 0; k < nbrs.size(); ++k) {
            const NodeId v = nbrs[k];
            if (v < 0 || v >= n_ || v == u) return false;
            if (k > 0 && nbrs[k - 1] >= v) return false;  // sorted, no duplicates
            if (!has_edge(v, u)) return false;
        }
    }
    return true;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edge_list() const {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(m_));
    for (NodeId u = 0; u < n_; ++u)
        for (const NodeId v : neighbors(u))
            if (u < v) edges.emplace_back(u, v);
    return edges;
}

std::vector<NodeId> LabelSet::labeled_nodes() const {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != kUnlabeled) out.push_back(static_cast<NodeId>(i));
    return out;
}

std::vector<EdgeCount> LabelSet::class_counts() const {
    std::vector<EdgeCount> counts(static_cast<std::size_t>(num_classes), 0);
    for (const NodeId l : labels)
        if (l != kUnlabeled) ++counts[l];
    return counts;
}

EdgeCount LabelSet::labeled_count() const {
    EdgeCount total = 0;
    for (const NodeId l : labels)
        if (l != kUnlabeled) ++total;
    return total;
}

std::vector<char> PriorSet::membership(NodeId n) const {
    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    for (const NodeId u : nodes) mask[u] = 1;
    return mask;
}

BeliefMatrix BeliefMatrix::zeros(std::size_t rows, std::size_t cols, bool centered) {
    BeliefMatrix b;
    b.rows = rows;
    b.cols = cols;
    b.centered = centered;
    b.values.assign(rows * cols, 0.0);
    return b;
}

CompatibilityMatrix CompatibilityMatrix::zeros(NodeId classes, CompatibilityForm form) {
    CompatibilityMatrix h;
    h.classes = classes;
    h.form = form;
    h.values.assign(static_cast<std::size_t>(classes) * classes, 0.0);
    return h;
}

std::vector<NodeId> CompatibilityMatrix::row_argmax() const {
    std::vector<NodeId> out(static_cast<std::size_t>(classes));
    for (NodeId i = 0; i < classes; ++i) {
        NodeId best = 0;
        for (NodeId j = 1; j < classes; ++j)
            if (at(i, j) > at(i, best)) best = j;
        out[i] = best;
    }
    return out;
}

SparseWeightedMatrix SparseWeightedMatrix::unit_weights(const Graph& g) {
    SparseWeightedMatrix m;
    m.n = g.num_nodes();
    m.offsets = g.offsets();
    m.cols = g.adjacency();
    m.values.assign(m.cols.size(), 1.0);
    return m;
}

SparseWeightedMatrix SparseWeightedMatrix::transposed() const {
    SparseWeightedMatrix t;
    t.n = n;
    std::vector<std::int64_t> degree(static_cast<std::size_t>(n), 0);
    for (const NodeId c : cols) ++degree[c];
    t.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId i = 0; i < n; ++i) t.offsets[i + 1] = t.offsets[i] + degree[i];
    t.cols.resize(cols.size());
    t.values.resize(values.size());
    std::vector<std::int64_t> cursor(t.offsets.begin(), t.offsets.end() - 1);
    for (NodeId r = 0; r < n; ++r) {
        for (std::int64_t k = offsets[r]; k < offsets[r + 1]; ++k) {
            const std::int64_t pos = cursor[cols[k]]++;
            t.cols[pos] = r;
            t.values[pos] = values[k];
        }
    }
    return t;
}

}  // namespace neteffect
