#include "neteffect/propagate.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "neteffect/parallel.hpp"
#include "neteffect/priors.hpp"
#include "neteffect/spectral.hpp"
#include "neteffect/synth.hpp"

namespace neteffect {

void PropagationConfig::validate() const {
    if (!(f_safety > 0.0 && f_safety < 1.0))
        throw std::invalid_argument("f_safety must be in (0, 1)");
    if (!(l1_threshold > 0.0)) throw std::invalid_argument("l1_threshold must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
}

const char* to_string(ClassifyMode mode) {
    switch (mode) {
        case ClassifyMode::neteffect: return "neteffect";
        case ClassifyMode::neteffect_hom: return "neteffect_hom";
        case ClassifyMode::neteffect_ec: return "neteffect_ec";
        case ClassifyMode::neteffect_a: return "neteffect_a";
    }
    return "neteffect";
}

BeliefMatrix propagate(const SparseWeightedMatrix& astar, const CompatibilityMatrix& hstar,
                       const BeliefMatrix& ehat, const PropagationConfig& config,
                       PropagationReport* report, int threads) {
    config.validate();
    if (!ehat.centered) throw std::invalid_argument("beliefs must be in residual form");
    if (hstar.form != CompatibilityForm::residual)
        throw std::invalid_argument("compatibility must be in residual form");
    if (ehat.rows != static_cast<std::size_t>(astar.n) ||
        ehat.cols != static_cast<std::size_t>(hstar.classes))
        throw std::invalid_argument("shape mismatch between beliefs, adjacency and compatibility");

    const std::size_t n = ehat.rows;
    const std::size_t c = ehat.cols;
    const double shift = 1.0 / static_cast<double>(c);

    PropagationReport local;
    const SpectralResult rho = spectral_radius(astar);
    local.rho = rho.value;

    BeliefMatrix plain = BeliefMatrix::zeros(n, c, false);
    if (rho.value == 0.0) {
        // No propagation possible; the fixed point is the prior itself.
        local.converged = true;
        if (report) *report = local;
        for (std::size_t i = 0; i < n * c; ++i) plain.values[i] = ehat.values[i] + shift;
        return plain;
    }

    const double f = config.f_safety / rho.value;
    local.f = f;

    std::vector<double> cur(n * c, 0.0);
    std::vector<double> next(n * c, 0.0);
    std::vector<double> mixed(n * c, 0.0);      // B H
    std::vector<double> row_delta(n, 0.0);

    for (int it = 1; it <= config.max_iter; ++it) {
        parallel_for(0, static_cast<std::int64_t>(n), threads, [&](std::int64_t i) {
            const double* row = cur.data() + static_cast<std::size_t>(i) * c;
            double* out = mixed.data() + static_cast<std::size_t>(i) * c;
            for (std::size_t u = 0; u < c; ++u) {
                double acc = 0.0;
                for (std::size_t k = 0; k < c; ++k)
                    acc += row[k] * hstar.values[k * c + u];
                out[u] = acc;
            }
        });
        parallel_for(0, static_cast<std::int64_t>(n), threads, [&](std::int64_t i) {
            double* out = next.data() + static_cast<std::size_t>(i) * c;
            const double* prior = ehat.values.data() + static_cast<std::size_t>(i) * c;
            for (std::size_t u = 0; u < c; ++u) out[u] = prior[u];
            for (std::int64_t k = astar.offsets[i]; k < astar.offsets[i + 1]; ++k) {
                const double w = f * astar.values[k];
                const double* in = mixed.data() + static_cast<std::size_t>(astar.cols[k]) * c;
                for (std::size_t u = 0; u < c; ++u) out[u] += w * in[u];
            }
            const double* old = cur.data() + static_cast<std::size_t>(i) * c;
            double d = 0.0;
            for (std::size_t u = 0; u < c; ++u) d += std::abs(out[u] - old[u]);
            row_delta[i] = d;
        });
        // Serial reduction in node order keeps the stop decision independent
        // of the worker count.
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) delta += row_delta[i];
        cur.swap(next);
        local.iterations = it;
        local.final_delta = delta;
        if (delta <= config.l1_threshold) {
            local.converged = true;
            break;
        }
    }

    for (std::size_t i = 0; i < n * c; ++i) plain.values[i] = cur[i] + shift;
    if (report) *report = local;
    return plain;
}

std::vector<NodeId> predict(const BeliefMatrix& beliefs) {
    if (beliefs.centered) throw std::invalid_argument("prediction expects plain-form beliefs");
    std::vector<NodeId> out(beliefs.rows);
    for (std::size_t i = 0; i < beliefs.rows; ++i) {
        const double* row = beliefs.row(i);
        std::size_t best = 0;
        for (std::size_t k = 1; k < beliefs.cols; ++k)
            if (row[k] > row[best]) best = k;
        out[i] = static_cast<NodeId>(best);
    }
    return out;
}

ClassifyResult classify(const Graph& g, const LabelSet& labels, const PriorSet& priors,
                        const WalkConfig& walk_config, const RidgeConfig& ridge_config,
                        const PropagationConfig& prop_config, ClassifyMode mode, int threads) {
    using clock = std::chrono::steady_clock;
    const auto seconds_since = [](clock::time_point start) {
        return std::chrono::duration<double>(clock::now() - start).count();
    };

    ClassifyResult result;
    result.report.mode = mode;
    const auto t_total = clock::now();

    auto t_stage = clock::now();
    SparseWeightedMatrix weights = mode == ClassifyMode::neteffect_a
                                       ? SparseWeightedMatrix::unit_weights(g)
                                       : emphasis_pipeline(g, walk_config, threads);
    result.report.emphasis_seconds = seconds_since(t_stage);

    const BeliefMatrix ehat = initial_beliefs(priors, labels, /*centered=*/true);

    t_stage = clock::now();
    switch (mode) {
        case ClassifyMode::neteffect:
        case ClassifyMode::neteffect_a: {
            EstimateResult est = estimate_compatibility(weights, ehat, priors, ridge_config);
            result.h = std::move(est.h);
            result.report.alpha_per_class = std::move(est.alpha_per_class);
            result.report.classes_without_priors = std::move(est.classes_without_priors);
            break;
        }
        case ClassifyMode::neteffect_ec:
            result.h = center(edge_counting_baseline(g, priors, labels));
            break;
        case ClassifyMode::neteffect_hom:
            result.h = centered_identity(labels.num_classes);
            break;
    }
    result.report.estimate_seconds = seconds_since(t_stage);

    t_stage = clock::now();
    const BeliefMatrix beliefs =
        propagate(weights, result.h, ehat, prop_config, &result.report.propagation, threads);
    result.report.propagate_seconds = seconds_since(t_stage);

    result.predictions = predict(beliefs);
    const auto eval = evaluation_nodes(labels, priors);
    if (!eval.empty())
        result.report.accuracy = accuracy(result.predictions, labels, eval);
    result.report.total_seconds = seconds_since(t_total);
    return result;
}

}  // namespace neteffect
