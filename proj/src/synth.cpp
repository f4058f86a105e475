#include "neteffect/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "neteffect/rng.hpp"

namespace neteffect {

NodeId GeneratorSpec::num_nodes() const {
    EdgeCount total = 0;
    for (const NodeId s : class_sizes) total += s;
    return static_cast<NodeId>(total);
}

void GeneratorSpec::validate() const {
    const std::size_t c = class_sizes.size();
    if (c < 2) throw std::invalid_argument("need at least 2 classes");
    for (const NodeId s : class_sizes)
        if (s < 1) throw std::invalid_argument("class sizes must be at least 1");
    if (h_mix.size() != c * c) throw std::invalid_argument("h_mix must be c x c");
    for (const double v : h_mix)
        if (!(v >= 0.0)) throw std::invalid_argument("h_mix entries must be nonnegative");
    for (std::size_t i = 0; i < c; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < c; ++j) row_sum += h_mix[i * c + j];
        if (!(row_sum > 0.0)) throw std::invalid_argument("h_mix rows must have positive sums");
    }
    if (!(noise_frac >= 0.0 && noise_frac < 1.0))
        throw std::invalid_argument("noise fraction must be in [0, 1)");
    if (m_target < 1) throw std::invalid_argument("edge target must be positive");
    const auto n = static_cast<EdgeCount>(num_nodes());
    if (m_target > n * (n - 1) / 2)
        throw std::invalid_argument("edge target exceeds the simple-graph capacity");
}

namespace {

std::uint64_t edge_key(NodeId u, NodeId v, NodeId n) {
    return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
           static_cast<std::uint64_t>(v);
}

}  // namespace

std::pair<Graph, LabelSet> generate(const GeneratorSpec& spec) {
    spec.validate();
    const NodeId c = spec.num_classes();
    const NodeId n = spec.num_nodes();

    std::vector<NodeId> class_offset(static_cast<std::size_t>(c) + 1, 0);
    for (NodeId k = 0; k < c; ++k) class_offset[k + 1] = class_offset[k] + spec.class_sizes[k];

    // Unordered class pairs weighted by the symmetrized mix entry times the
    // number of available node pairs; a uniform mix therefore reduces to a
    // uniform simple random graph.
    struct PairChoice {
        NodeId a, b;
        double cumulative;
    };
    std::vector<PairChoice> choices;
    double total_weight = 0.0;
    for (NodeId a = 0; a < c; ++a) {
        for (NodeId b = a; b < c; ++b) {
            const double mix = 0.5 * (spec.mix(a, b) + spec.mix(b, a));
            const double pairs =
                a == b ? 0.5 * static_cast<double>(spec.class_sizes[a]) *
                             (static_cast<double>(spec.class_sizes[a]) - 1.0)
                       : static_cast<double>(spec.class_sizes[a]) *
                             static_cast<double>(spec.class_sizes[b]);
            const double weight = mix * pairs;
            if (weight <= 0.0) continue;
            total_weight += weight;
            choices.push_back({a, b, total_weight});
        }
    }
    if (choices.empty()) throw std::invalid_argument("h_mix admits no edges");

    const auto structural =
        static_cast<EdgeCount>(std::llround((1.0 - spec.noise_frac) * static_cast<double>(spec.m_target)));
    Rng rng(derive_seed(spec.seed, 0x73796e74u));
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<std::size_t>(spec.m_target) * 2);
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<std::size_t>(spec.m_target));

    const EdgeCount max_attempts = 200 * spec.m_target + 10000;
    EdgeCount attempts = 0;
    const auto draw_in_class = [&](NodeId k) {
        return class_offset[k] +
               static_cast<NodeId>(rng.uniform_below(static_cast<std::uint64_t>(spec.class_sizes[k])));
    };
    const auto try_add = [&](NodeId u, NodeId v) {
        if (u == v) return false;
        if (u > v) std::swap(u, v);
        if (!seen.insert(edge_key(u, v, n)).second) return false;
        edges.emplace_back(u, v);
        return true;
    };

    while (static_cast<EdgeCount>(edges.size()) < structural) {
        if (++attempts > max_attempts)
            throw std::runtime_error("edge target is too dense for the requested mix");
        const double pick = rng.uniform01() * total_weight;
        const auto it = std::lower_bound(choices.begin(), choices.end(), pick,
                                         [](const PairChoice& ch, double v) { return ch.cumulative < v; });
        const PairChoice& choice = it == choices.end() ? choices.back() : *it;
        try_add(draw_in_class(choice.a), draw_in_class(choice.b));
    }
    while (static_cast<EdgeCount>(edges.size()) < spec.m_target) {
        if (++attempts > max_attempts)
            throw std::runtime_error("edge target is too dense for the requested mix");
        const NodeId u = static_cast<NodeId>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        const NodeId v = static_cast<NodeId>(rng.uniform_below(static_cast<std::uint64_t>(n)));
        try_add(u, v);
    }

    std::sort(edges.begin(), edges.end());
    Graph g = Graph::from_edges(n, edges);

    LabelSet labels;
    labels.num_classes = c;
    labels.labels.resize(static_cast<std::size_t>(n));
    for (NodeId k = 0; k < c; ++k) {
        labels.class_names.push_back(std::to_string(k));
        for (NodeId u = class_offset[k]; u < class_offset[k + 1]; ++u) labels.labels[u] = k;
    }
    return {std::move(g), std::move(labels)};
}

GeneratorSpec preset(const std::string& name, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.seed = seed;
    if (name == "xophily") {
        // Two heterophily pairs, two homophily classes, and moderate
        // cross-community blocks.
        spec.class_sizes.assign(6, 2000);
        const double d = 0.02;   // within heterophily classes
        const double x = 0.10;   // between heterophily communities
        const double y = 0.05;   // heterophily <-> homophily blocks
        const double z = 0.05;   // between the homophily classes
        spec.h_mix = {
            d, 1.0, x,   x,   y,   y,
            1.0, d, x,   x,   y,   y,
            x,   x, d,   1.0, y,   y,
            x,   x, 1.0, d,   y,   y,
            y,   y, y,   y,   1.0, z,
            y,   y, y,   y,   z,   1.0,
        };
        spec.m_target = 60000;
        spec.noise_frac = 0.1;
    } else if (name == "homophily") {
        spec.class_sizes.assign(6, 2000);
        spec.h_mix.assign(36, 0.01);
        for (int i = 0; i < 6; ++i) spec.h_mix[static_cast<std::size_t>(i) * 6 + i] = 1.0;
        spec.m_target = 60000;
        spec.noise_frac = 0.05;
    } else if (name == "weak") {
        // Classes 0 and 1 are strongly homophilous; class 2 wires uniformly
        // to everything and stays indistinguishable.
        spec.class_sizes.assign(3, 1000);
        spec.h_mix = {
            1.0, 0.05, 1.0,
            0.05, 1.0, 1.0,
            1.0, 1.0, 1.0,
        };
        spec.m_target = 15000;
        spec.noise_frac = 0.05;
    } else if (name == "random" || name == "no-gne") {
        spec.class_sizes.assign(2, 1000);
        spec.h_mix.assign(4, 1.0);
        spec.m_target = 10000;
        spec.noise_frac = 0.0;
    } else if (name == "bipartite") {
        spec.class_sizes.assign(2, 1000);
        spec.h_mix = {0.0, 1.0, 1.0, 0.0};
        spec.m_target = 10000;
        spec.noise_frac = 0.0;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return spec;
}

std::vector<std::string> preset_names() {
    return {"xophily", "homophily", "weak", "random", "no-gne", "bipartite"};
}

double accuracy(std::span<const NodeId> predictions, const LabelSet& truth,
                std::span<const NodeId> eval_nodes) {
    if (eval_nodes.empty()) throw std::invalid_argument("evaluation set is empty");
    EdgeCount correct = 0;
    for (const NodeId u : eval_nodes) {
        if (truth.labels[u] == kUnlabeled)
            throw std::invalid_argument("evaluation node without a ground-truth label");
        if (predictions[u] == truth.labels[u]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(eval_nodes.size());
}

std::vector<NodeId> evaluation_nodes(const LabelSet& labels, const PriorSet& priors) {
    const auto in_priors = priors.membership(static_cast<NodeId>(labels.labels.size()));
    std::vector<NodeId> eval;
    for (std::size_t u = 0; u < labels.labels.size(); ++u)
        if (labels.labels[u] != kUnlabeled && !in_priors[u])
            eval.push_back(static_cast<NodeId>(u));
    return eval;
}

HomophilyStats edge_homophily(const Graph& g, const LabelSet& labels) {
    HomophilyStats stats;
    EdgeCount same = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        for (const NodeId v : g.neighbors(u)) {
            if (u >= v) continue;
            if (labels.labels[u] == kUnlabeled || labels.labels[v] == kUnlabeled) {
                ++stats.skipped;
                continue;
            }
            ++stats.counted;
            if (labels.labels[u] == labels.labels[v]) ++same;
        }
    }
    if (stats.counted == 0) throw std::runtime_error("no edges with both endpoints labeled");
    stats.value = static_cast<double>(same) / static_cast<double>(stats.counted);
    return stats;
}

double class_insensitive_homophily(const Graph& g, const LabelSet& labels) {
    const NodeId c = labels.num_classes;
    std::vector<double> same(static_cast<std::size_t>(c), 0.0);
    std::vector<double> incident(static_cast<std::size_t>(c), 0.0);
    EdgeCount counted = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        for (const NodeId v : g.neighbors(u)) {
            if (u >= v) continue;
            const NodeId lu = labels.labels[u];
            const NodeId lv = labels.labels[v];
            if (lu == kUnlabeled || lv == kUnlabeled) continue;
            ++counted;
            incident[lu] += 1.0;
            incident[lv] += 1.0;
            if (lu == lv) {
                same[lu] += 2.0;
            }
        }
    }
    if (counted == 0) throw std::runtime_error("no edges with both endpoints labeled");
    const double labeled = static_cast<double>(labels.labeled_count());
    const auto class_sizes = labels.class_counts();
    double sum = 0.0;
    for (NodeId k = 0; k < c; ++k) {
        if (incident[k] <= 0.0) continue;
        const double h_k = same[k] / incident[k];
        const double prevalence = static_cast<double>(class_sizes[k]) / labeled;
        sum += std::max(0.0, h_k - prevalence);
    }
    return sum / static_cast<double>(c - 1);
}

}  // namespace neteffect
