#include "neteffect/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace neteffect {

RidgeConfig RidgeConfig::defaults() {
    RidgeConfig config;
    config.alpha_grid.reserve(13);
    for (int i = 0; i < 13; ++i)
        config.alpha_grid.push_back(std::pow(10.0, -3.0 + 0.5 * i));
    return config;
}

void RidgeConfig::validate() const {
    if (alpha_grid.empty()) throw std::invalid_argument("alpha grid must be nonempty");
    for (const double a : alpha_grid)
        if (!(a > 0.0)) throw std::invalid_argument("alpha grid values must be positive");
}

RidgeFit loocv_select_alpha(const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                            const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("alpha grid must be nonempty");
    const Eigen::Index samples = features.rows();
    if (samples < 2) throw std::invalid_argument("leave-one-out needs at least 2 samples");
    if (targets.size() != samples) throw std::invalid_argument("feature/target size mismatch");

    const Eigen::MatrixXd xtx = features.transpose() * features;
    const Eigen::VectorXd xty = features.transpose() * targets;

    RidgeFit best;
    bool have_best = false;
    for (const double alpha : grid) {
        Eigen::MatrixXd m = xtx;
        m.diagonal().array() += alpha;
        const Eigen::LDLT<Eigen::MatrixXd> solver(m);
        const Eigen::VectorXd beta = solver.solve(xty);
        const Eigen::VectorXd residual = targets - features * beta;
        // h_ii = x_i^T (X^T X + alpha I)^-1 x_i, the ridge hat diagonal.
        const Eigen::MatrixXd pinv_xt = solver.solve(features.transpose());
        Eigen::VectorXd loo(samples);
        for (Eigen::Index i = 0; i < samples; ++i) {
            const double h = features.row(i).dot(pinv_xt.col(i));
            double denom = 1.0 - h;
            if (std::abs(denom) < 1e-12) denom = denom < 0 ? -1e-12 : 1e-12;
            loo(i) = residual(i) / denom;
        }
        const double mse = loo.squaredNorm() / static_cast<double>(samples);
        if (!have_best || mse < best.loo_mse) {
            best.alpha = alpha;
            best.coefficients = beta;
            best.loo_residuals = loo;
            best.loo_mse = mse;
            have_best = true;
        }
    }
    return best;
}

EstimateResult estimate_compatibility(const SparseWeightedMatrix& a, const BeliefMatrix& ehat,
                                      const PriorSet& priors, const RidgeConfig& config) {
    config.validate();
    if (!ehat.centered) throw std::invalid_argument("beliefs must be in residual form");
    if (priors.nodes.empty()) throw std::invalid_argument("prior set is empty");
    if (ehat.rows != static_cast<std::size_t>(a.n))
        throw std::invalid_argument("belief/adjacency size mismatch");
    const auto c = static_cast<Eigen::Index>(ehat.cols);
    const auto p = static_cast<Eigen::Index>(priors.nodes.size());

    // Per-prior-node rows of Z = A E; rows outside the priors never enter the
    // regression, so they are not materialized.
    Eigen::MatrixXd z(p, c);
    Eigen::MatrixXd y(p, c);
    for (Eigen::Index r = 0; r < p; ++r) {
        const NodeId node = priors.nodes[static_cast<std::size_t>(r)];
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(c);
        for (std::int64_t k = a.offsets[node]; k < a.offsets[node + 1]; ++k) {
            const double w = a.values[k];
            const double* row = ehat.row(static_cast<std::size_t>(a.cols[k]));
            for (Eigen::Index j = 0; j < c; ++j) acc(j) += w * row[j];
        }
        z.row(r) = acc;
        const double* row = ehat.row(static_cast<std::size_t>(node));
        for (Eigen::Index j = 0; j < c; ++j) y(r, j) = row[j];
    }

    EstimateResult result;
    result.h = CompatibilityMatrix::zeros(static_cast<NodeId>(c), CompatibilityForm::residual);
    result.alpha_per_class.resize(static_cast<std::size_t>(c));
    for (Eigen::Index u = 0; u < c; ++u) {
        const RidgeFit fit = loocv_select_alpha(z, y.col(u), config.alpha_grid);
        result.alpha_per_class[static_cast<std::size_t>(u)] = fit.alpha;
        for (Eigen::Index k = 0; k < c; ++k)
            result.h.at(static_cast<NodeId>(k), static_cast<NodeId>(u)) = fit.coefficients(k);
    }

    // A residual prior row peaks at its true class with value 1 - 1/c.
    std::vector<EdgeCount> prior_count(static_cast<std::size_t>(c), 0);
    for (const NodeId node : priors.nodes) {
        const double* row = ehat.row(static_cast<std::size_t>(node));
        Eigen::Index cls = 0;
        for (Eigen::Index j = 1; j < c; ++j)
            if (row[j] > row[cls]) cls = j;
        ++prior_count[static_cast<std::size_t>(cls)];
    }
    for (Eigen::Index j = 0; j < c; ++j)
        if (prior_count[static_cast<std::size_t>(j)] == 0)
            result.classes_without_priors.push_back(static_cast<NodeId>(j));
    return result;
}

CompatibilityMatrix edge_counting_baseline(const Graph& g, const PriorSet& priors,
                                           const LabelSet& labels) {
    if (priors.nodes.empty()) throw std::invalid_argument("prior set is empty");
    const NodeId c = labels.num_classes;
    CompatibilityMatrix counts = CompatibilityMatrix::zeros(c, CompatibilityForm::display);
    const auto in_priors = priors.membership(g.num_nodes());
    for (const NodeId u : priors.nodes) {
        const NodeId lu = labels.labels[u];
        if (lu == kUnlabeled) continue;
        for (const NodeId v : g.neighbors(u)) {
            if (u >= v || !in_priors[v]) continue;
            const NodeId lv = labels.labels[v];
            if (lv == kUnlabeled) continue;
            counts.at(lu, lv) += 1.0;
            counts.at(lv, lu) += 1.0;
        }
    }
    for (NodeId i = 0; i < c; ++i) {
        double row_sum = 0.0;
        for (NodeId j = 0; j < c; ++j) row_sum += counts.at(i, j);
        if (row_sum > 0.0) {
            for (NodeId j = 0; j < c; ++j) counts.at(i, j) /= row_sum;
        } else {
            for (NodeId j = 0; j < c; ++j) counts.at(i, j) = 1.0 / static_cast<double>(c);
        }
    }
    return counts;
}

CompatibilityMatrix to_display(const CompatibilityMatrix& h) {
    if (h.form != CompatibilityForm::residual)
        throw std::invalid_argument("expected a residual-form matrix");
    const NodeId c = h.classes;
    CompatibilityMatrix out = CompatibilityMatrix::zeros(c, CompatibilityForm::display);
    const double shift = 1.0 / static_cast<double>(c);
    for (NodeId i = 0; i < c; ++i) {
        double row_sum = 0.0;
        for (NodeId j = 0; j < c; ++j) {
            const double v = std::max(0.0, h.at(i, j) + shift);
            out.at(i, j) = v;
            row_sum += v;
        }
        if (row_sum > 0.0) {
            for (NodeId j = 0; j < c; ++j) out.at(i, j) /= row_sum;
        } else {
            for (NodeId j = 0; j < c; ++j) out.at(i, j) = shift;
        }
    }
    return out;
}

CompatibilityMatrix center(const CompatibilityMatrix& h) {
    if (h.form != CompatibilityForm::display)
        throw std::invalid_argument("expected a display-form matrix");
    CompatibilityMatrix out = h;
    out.form = CompatibilityForm::residual;
    const double shift = 1.0 / static_cast<double>(h.classes);
    for (double& v : out.values) v -= shift;
    return out;
}

CompatibilityMatrix centered_identity(NodeId classes) {
    CompatibilityMatrix identity = CompatibilityMatrix::zeros(classes, CompatibilityForm::display);
    for (NodeId i = 0; i < classes; ++i) identity.at(i, i) = 1.0;
    return center(identity);
}

}  // namespace neteffect
