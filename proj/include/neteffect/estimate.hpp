#pragma once

#include <vector>

#include <Eigen/Dense>

#include "neteffect/types.hpp"

namespace neteffect {

struct RidgeConfig {
    /// Regularization strengths tried by leave-one-out cross-validation.
    std::vector<double> alpha_grid;

    static RidgeConfig defaults();  // 13 log-spaced values in [1e-3, 1e3]
    void validate() const;
};

struct RidgeFit {
    double alpha = 0.0;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd loo_residuals;  // e_i / (1 - h_ii) for the winning alpha
    double loo_mse = 0.0;
};

/// Ridge regression with the grid value chosen by closed-form leave-one-out
/// residuals e_i / (1 - h_ii) from the hat matrix, then refit on all samples.
/// No intercept. Requires at least 2 samples.
RidgeFit loocv_select_alpha(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                            const std::vector<double>& grid);

struct EstimateResult {
    CompatibilityMatrix h;                    // residual form
    std::vector<double> alpha_per_class;      // selected strength per target class
    std::vector<NodeId> classes_without_priors;
};

/// Closed-form compatibility estimation: regress the residual priors on their
/// propagated one-step image Z = A E, one independent ridge subproblem per
/// target class, restricted to prior rows.
EstimateResult estimate_compatibility(const SparseWeightedMatrix& a, const BeliefMatrix& ehat,
                                      const PriorSet& priors, const RidgeConfig& config);

/// Count edges between prior-labeled class pairs and row-normalize. Each
/// same-class edge contributes 2 to its diagonal cell, each cross edge 1 to
/// both off-diagonal cells. Zero rows become uniform. Display form.
CompatibilityMatrix edge_counting_baseline(const Graph& g, const PriorSet& priors,
                                           const LabelSet& labels);

/// Residual -> display: add 1/c, clamp negatives to zero, row-normalize.
/// Reporting only; propagation keeps consuming the residual form.
CompatibilityMatrix to_display(const CompatibilityMatrix& h);

/// Display -> residual: subtract 1/c.
CompatibilityMatrix center(const CompatibilityMatrix& h);

/// Residual form of the identity compatibility (pure homophily assumption).
CompatibilityMatrix centered_identity(NodeId classes);

}  // namespace neteffect
