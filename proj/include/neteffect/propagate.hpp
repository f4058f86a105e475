#pragma once

#include <optional>
#include <string>
#include <vector>

#include "neteffect/emphasis.hpp"
#include "neteffect/estimate.hpp"
#include "neteffect/types.hpp"

namespace neteffect {

struct PropagationConfig {
    double f_safety = 0.9;      // scaling numerator; f = f_safety / rho(A*)
    double l1_threshold = 1.0;  // stop once the entrywise L1 change drops to this
    int max_iter = 200;

    void validate() const;
};

struct PropagationReport {
    int iterations = 0;
    double f = 0.0;
    double rho = 0.0;
    bool converged = false;
    double final_delta = 0.0;
};

/// Iterate B <- E + f A B H from zero until the L1 change falls to the
/// threshold, then return the plain-form beliefs B + 1/c. An edgeless matrix
/// short-circuits to E + 1/c.
BeliefMatrix propagate(const SparseWeightedMatrix& astar, const CompatibilityMatrix& hstar,
                       const BeliefMatrix& ehat, const PropagationConfig& config,
                       PropagationReport* report = nullptr, int threads = 1);

/// Per-node argmax over plain beliefs; ties break toward the lower class id.
std::vector<NodeId> predict(const BeliefMatrix& beliefs);

enum class ClassifyMode { neteffect, neteffect_hom, neteffect_ec, neteffect_a };

const char* to_string(ClassifyMode mode);

struct ClassifyReport {
    ClassifyMode mode = ClassifyMode::neteffect;
    double emphasis_seconds = 0.0;
    double estimate_seconds = 0.0;
    double propagate_seconds = 0.0;
    double total_seconds = 0.0;
    PropagationReport propagation;
    std::vector<double> alpha_per_class;         // empty for hom/ec modes
    std::vector<NodeId> classes_without_priors;
    std::optional<double> accuracy;              // on labeled nodes outside the priors
};

struct ClassifyResult {
    std::vector<NodeId> predictions;
    CompatibilityMatrix h;  // residual form used for propagation
    ClassifyReport report;
};

/// End-to-end node classification. The mode picks the propagation input and
/// the compatibility source: the full pipeline uses the emphasis matrix for
/// both, `neteffect_a` runs entirely on the raw adjacency, `neteffect_ec`
/// swaps in the edge-counting estimate, and `neteffect_hom` assumes homophily
/// via the centered identity.
ClassifyResult classify(const Graph& g, const LabelSet& labels, const PriorSet& priors,
                        const WalkConfig& walk_config, const RidgeConfig& ridge_config,
                        const PropagationConfig& prop_config, ClassifyMode mode, int threads = 1);

}  // namespace neteffect
