#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "neteffect/types.hpp"

namespace neteffect {

/// Compatibility-driven block generator. Structural edges draw a class pair
/// with probability proportional to the symmetrized h_mix entry times the
/// number of available node pairs, then uniform endpoints within the classes;
/// a noise fraction of the edge budget is added as uniform random edges.
struct GeneratorSpec {
    std::vector<NodeId> class_sizes;
    std::vector<double> h_mix;   // c x c, nonnegative, row-major
    EdgeCount m_target = 0;
    double noise_frac = 0.0;
    std::uint64_t seed = 0;

    NodeId num_classes() const { return static_cast<NodeId>(class_sizes.size()); }
    NodeId num_nodes() const;
    double mix(NodeId i, NodeId j) const {
        return h_mix[static_cast<std::size_t>(i) * class_sizes.size() + j];
    }
    void validate() const;
};

std::pair<Graph, LabelSet> generate(const GeneratorSpec& spec);

/// Named desk-scale presets: "xophily", "homophily", "weak", "random",
/// "bipartite".
GeneratorSpec preset(const std::string& name, std::uint64_t seed);
std::vector<std::string> preset_names();

/// Fraction of eval nodes whose prediction matches the ground truth.
double accuracy(std::span<const NodeId> predictions, const LabelSet& truth,
                std::span<const NodeId> eval_nodes);

/// Labeled nodes outside the prior set — the held-out evaluation split.
std::vector<NodeId> evaluation_nodes(const LabelSet& labels, const PriorSet& priors);

struct HomophilyStats {
    double value = 0.0;       // same-class edges / counted edges
    EdgeCount counted = 0;
    EdgeCount skipped = 0;    // edges with an unlabeled endpoint
};

HomophilyStats edge_homophily(const Graph& g, const LabelSet& labels);

/// Class-insensitive homophily: mean over classes of the clipped excess of
/// the per-class same-class endpoint fraction over the class prevalence,
/// scaled by 1/(c-1). Always in [0, 1].
double class_insensitive_homophily(const Graph& g, const LabelSet& labels);

}  // namespace neteffect
