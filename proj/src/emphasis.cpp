#include "neteffect/emphasis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "neteffect/parallel.hpp"
#include "neteffect/rng.hpp"
#include "neteffect/svd.hpp"

namespace neteffect {

void WalkConfig::validate() const {
    if (length < 1) throw std::invalid_argument("walk length must be at least 1");
    if (trials < 1) throw std::invalid_argument("walk trials must be at least 1");
    if (rank < 1) throw std::invalid_argument("embedding rank must be at least 1");
}

namespace {

/// Uniform draw from the neighbors of `cur` excluding `banned` (or any
/// neighbor when banned is absent). Returns kUnlabeled when no step is legal.
NodeId step_from(const Graph& g, NodeId cur, NodeId banned, Rng& rng) {
    const auto nbrs = g.neighbors(cur);
    if (nbrs.empty()) return kUnlabeled;
    std::size_t banned_pos = nbrs.size();
    if (banned >= 0) {
        const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), banned);
        if (it != nbrs.end() && *it == banned) banned_pos = static_cast<std::size_t>(it - nbrs.begin());
    }
    const std::size_t choices = nbrs.size() - (banned_pos < nbrs.size() ? 1 : 0);
    if (choices == 0) return kUnlabeled;  // dead end: only way out is backwards
    std::size_t pick = static_cast<std::size_t>(rng.uniform_below(choices));
    if (pick >= banned_pos) ++pick;
    return nbrs[pick];
}

}  // namespace

SparseWeightedMatrix nb_random_walks(const Graph& g, const WalkConfig& config, int threads,
                                     std::vector<std::vector<NodeId>>* capture) {
    config.validate();
    const NodeId n = g.num_nodes();
    std::vector<std::vector<NodeId>> visits(static_cast<std::size_t>(n));
    if (capture) threads = 1;

    parallel_for(0, n, threads, [&](std::int64_t start) {
        Rng rng(derive_seed(config.seed, 0x77616c6bu, static_cast<std::uint64_t>(start)));
        auto& row = visits[start];
        row.reserve(static_cast<std::size_t>(config.length) * config.trials);
        for (int trial = 0; trial < config.trials; ++trial) {
            std::vector<NodeId>* sequence = nullptr;
            if (capture) {
                capture->emplace_back(1, static_cast<NodeId>(start));
                sequence = &capture->back();
            }
            NodeId prev = kUnlabeled;
            NodeId cur = static_cast<NodeId>(start);
            for (int step = 0; step < config.length; ++step) {
                const NodeId banned = config.backtracking_allowed ? kUnlabeled : prev;
                const NodeId next = step_from(g, cur, banned, rng);
                if (next == kUnlabeled) break;
                row.push_back(next);
                if (sequence) sequence->push_back(next);
                prev = cur;
                cur = next;
            }
        }
        std::sort(row.begin(), row.end());
    });

    SparseWeightedMatrix wprime;
    wprime.n = n;
    wprime.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId i = 0; i < n; ++i) {
        std::int64_t distinct = 0;
        const auto& row = visits[i];
        for (std::size_t k = 0; k < row.size(); ++k)
            if (k == 0 || row[k] != row[k - 1]) ++distinct;
        wprime.offsets[i + 1] = wprime.offsets[i] + distinct;
    }
    wprime.cols.resize(static_cast<std::size_t>(wprime.offsets[n]));
    wprime.values.resize(wprime.cols.size());
    for (NodeId i = 0; i < n; ++i) {
        std::int64_t pos = wprime.offsets[i];
        const auto& row = visits[i];
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k == 0 || row[k] != row[k - 1]) {
                wprime.cols[pos] = row[k];
                wprime.values[pos] = 1.0;
                ++pos;
            } else {
                wprime.values[pos - 1] += 1.0;
            }
        }
    }
    return wprime;
}

double walk_error_bound(int length, int trials, double delta, bool backtracking_allowed) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
    if (length < 2) throw std::invalid_argument("walk length must be at least 2");
    if (trials < 1) throw std::invalid_argument("walk trials must be at least 1");
    const int divisor = backtracking_allowed ? 2 : 3;
    const int numerator = (length - 1 + divisor - 1) / divisor;  // ceil((L-1)/divisor)
    const double lm = static_cast<double>(length) * trials;
    return static_cast<double>(numerator) / length * std::sqrt(std::log(2.0 / delta) / (2.0 * lm));
}

SparseWeightedMatrix transform_proximity(const SparseWeightedMatrix& wprime, const Graph& g) {
    if (wprime.n != g.num_nodes())
        throw std::invalid_argument("proximity matrix does not match the graph");
    SparseWeightedMatrix w;
    w.n = wprime.n;
    w.offsets.reserve(static_cast<std::size_t>(w.n) + 1);
    for (NodeId i = 0; i < w.n; ++i) {
        const auto nbrs = g.neighbors(i);
        const auto cols = wprime.row_cols(i);
        const auto vals = wprime.row_values(i);
        const double degree = static_cast<double>(g.degree(i));
        // Both lists are sorted; keep visited 1-hop neighbors only.
        std::size_t a = 0, b = 0;
        while (a < cols.size() && b < nbrs.size()) {
            if (cols[a] < nbrs[b]) ++a;
            else if (cols[a] > nbrs[b]) ++b;
            else {
                w.cols.push_back(cols[a]);
                w.values.push_back(std::log(vals[a] / degree));
                ++a;
                ++b;
            }
        }
        w.offsets.push_back(static_cast<std::int64_t>(w.cols.size()));
    }
    return w;
}

NodeEmbedding embed(const SparseWeightedMatrix& w, int rank, std::uint64_t seed, int threads) {
    const TruncatedSvd svd = truncated_svd(w, rank, seed, threads);
    NodeEmbedding emb;
    emb.rows = static_cast<std::size_t>(w.n);
    emb.cols = static_cast<std::size_t>(svd.sigma.size());
    emb.rank_reduced = svd.rank_reduced;
    emb.values.resize(emb.rows * emb.cols);
    for (std::size_t i = 0; i < emb.rows; ++i)
        for (std::size_t k = 0; k < emb.cols; ++k)
            emb.values[i * emb.cols + k] =
                svd.u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
                std::sqrt(svd.sigma(static_cast<Eigen::Index>(k)));
    return emb;
}

SparseWeightedMatrix build_emphasis(const Graph& g, const NodeEmbedding& embedding) {
    if (embedding.rows != static_cast<std::size_t>(g.num_nodes()))
        throw std::invalid_argument("embedding does not match the graph");
    SparseWeightedMatrix astar;
    astar.n = g.num_nodes();
    astar.offsets = g.offsets();
    astar.cols = g.adjacency();
    astar.values.assign(astar.cols.size(), 0.0);
    const std::size_t d = embedding.cols;
    for (NodeId i = 0; i < astar.n; ++i) {
        const double* ui = embedding.row(static_cast<std::size_t>(i));
        for (std::int64_t k = astar.offsets[i]; k < astar.offsets[i + 1]; ++k) {
            const double* uj = embedding.row(static_cast<std::size_t>(astar.cols[k]));
            double dist_sq = 0.0;
            for (std::size_t t = 0; t < d; ++t) {
                const double diff = ui[t] - uj[t];
                dist_sq += diff * diff;
            }
            astar.values[k] = std::exp(-std::sqrt(dist_sq));
        }
    }
    return astar;
}

SparseWeightedMatrix emphasis_pipeline(const Graph& g, const WalkConfig& config, int threads) {
    config.validate();
    const SparseWeightedMatrix wprime = nb_random_walks(g, config, threads);
    const SparseWeightedMatrix w = transform_proximity(wprime, g);
    const int rank = std::max(1, std::min(config.rank, g.num_nodes() - 1));
    const NodeEmbedding embedding = embed(w, rank, derive_seed(config.seed, 0x656d6264u), threads);
    return build_emphasis(g, embedding);
}

}  // namespace neteffect
