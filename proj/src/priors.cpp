#include "neteffect/priors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "neteffect/rng.hpp"

namespace neteffect {

namespace {

/// First k elements of a seeded uniform permutation of `pool` (partial
/// Fisher-Yates; pool is taken by value and mutated).
std::vector<NodeId> draw_without_replacement(std::vector<NodeId> pool, std::size_t k, Rng& rng) {
    for (std::size_t t = 0; t < k; ++t) {
        const std::size_t r = t + rng.uniform_below(pool.size() - t);
        std::swap(pool[t], pool[r]);
    }
    pool.resize(k);
    return pool;
}

void check_fraction(double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("prior fraction must be in (0, 1]");
}

}  // namespace

PriorSet sample_priors(const LabelSet& labels, double fraction, std::uint64_t seed,
                       bool stratified) {
    check_fraction(fraction);
    PriorSet priors;
    priors.fraction = fraction;
    priors.seed = seed;
    Rng rng(derive_seed(seed, 0x70726972u));
    if (!stratified) {
        auto pool = labels.labeled_nodes();
        if (pool.empty()) throw std::invalid_argument("no labeled nodes to sample from");
        const auto k = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(pool.size()))));
        priors.nodes = draw_without_replacement(std::move(pool), k, rng);
    } else {
        std::vector<std::vector<NodeId>> per_class(labels.num_classes);
        for (std::size_t u = 0; u < labels.labels.size(); ++u)
            if (labels.labels[u] != kUnlabeled)
                per_class[labels.labels[u]].push_back(static_cast<NodeId>(u));
        for (NodeId c = 0; c < labels.num_classes; ++c) {
            const auto k = static_cast<std::size_t>(
                std::floor(fraction * static_cast<double>(per_class[c].size())));
            if (k < 1)
                throw std::invalid_argument("stratified sampling needs fraction * class size >= 1 "
                                            "for class " + std::to_string(c));
            auto picked = draw_without_replacement(std::move(per_class[c]), k, rng);
            priors.nodes.insert(priors.nodes.end(), picked.begin(), picked.end());
        }
    }
    std::sort(priors.nodes.begin(), priors.nodes.end());
    return priors;
}

PriorSet sample_priors_per_class(const LabelSet& labels, const std::vector<double>& fractions,
                                 std::uint64_t seed) {
    if (static_cast<NodeId>(fractions.size()) != labels.num_classes)
        throw std::invalid_argument("need one fraction per class");
    for (const double f : fractions) check_fraction(f);
    PriorSet priors;
    priors.fraction = 0.0;
    priors.seed = seed;
    Rng rng(derive_seed(seed, 0x70726972u));
    std::vector<std::vector<NodeId>> per_class(labels.num_classes);
    for (std::size_t u = 0; u < labels.labels.size(); ++u)
        if (labels.labels[u] != kUnlabeled)
            per_class[labels.labels[u]].push_back(static_cast<NodeId>(u));
    for (NodeId c = 0; c < labels.num_classes; ++c) {
        const auto k = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::floor(fractions[c] * static_cast<double>(per_class[c].size()))));
        auto picked = draw_without_replacement(std::move(per_class[c]), k, rng);
        priors.nodes.insert(priors.nodes.end(), picked.begin(), picked.end());
    }
    std::sort(priors.nodes.begin(), priors.nodes.end());
    return priors;
}

BeliefMatrix initial_beliefs(const PriorSet& priors, const LabelSet& labels, bool centered) {
    const std::size_t n = labels.labels.size();
    const std::size_t c = static_cast<std::size_t>(labels.num_classes);
    if (c < 2) throw std::invalid_argument("need at least 2 classes");
    BeliefMatrix b = BeliefMatrix::zeros(n, c, centered);
    const double uniform = 1.0 / static_cast<double>(c);
    if (!centered)
        std::fill(b.values.begin(), b.values.end(), uniform);
    for (const NodeId u : priors.nodes) {
        const NodeId l = labels.labels[u];
        if (l == kUnlabeled) throw std::invalid_argument("prior node without a label");
        double* row = b.row(static_cast<std::size_t>(u));
        if (centered) {
            for (std::size_t k = 0; k < c; ++k) row[k] = -uniform;
            row[l] += 1.0;
        } else {
            for (std::size_t k = 0; k < c; ++k) row[k] = 0.0;
            row[l] = 1.0;
        }
    }
    return b;
}

}  // namespace neteffect
