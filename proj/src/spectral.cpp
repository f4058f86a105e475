#include "neteffect/spectral.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "neteffect/parallel.hpp"

namespace neteffect {

void spmv(const SparseWeightedMatrix& a, const double* x, double* y, int threads) {
    parallel_for(0, a.n, threads, [&](std::int64_t i) {
        double acc = 0.0;
        for (std::int64_t k = a.offsets[i]; k < a.offsets[i + 1]; ++k)
            acc += a.values[k] * x[a.cols[k]];
        y[i] = acc;
    });
}

void spmm(const SparseWeightedMatrix& a, const double* x, double* y, std::size_t c, int threads) {
    parallel_for(0, a.n, threads, [&](std::int64_t i) {
        double* out = y + static_cast<std::size_t>(i) * c;
        for (std::size_t k = 0; k < c; ++k) out[k] = 0.0;
        for (std::int64_t k = a.offsets[i]; k < a.offsets[i + 1]; ++k) {
            const double w = a.values[k];
            const double* in = x + static_cast<std::size_t>(a.cols[k]) * c;
            for (std::size_t j = 0; j < c; ++j) out[j] += w * in[j];
        }
    });
}

SpectralResult spectral_radius(const SparseWeightedMatrix& a, double tol, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    SpectralResult result;
    const std::size_t n = static_cast<std::size_t>(a.n);
    if (n == 0 || a.nnz() == 0) {
        result.converged = true;
        return result;
    }
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n, 0.0);
    double estimate = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        spmv(a, x.data(), y.data());
        double norm_sq = 0.0;
        for (const double v : y) norm_sq += v * v;
        const double norm = std::sqrt(norm_sq);
        result.iterations = it;
        if (norm == 0.0) {
            // x landed in the null space; with the fixed all-ones start this
            // only happens for matrices whose row sums vanish identically.
            result.value = 0.0;
            result.converged = true;
            return result;
        }
        const double previous = estimate;
        estimate = norm;  // ||A x|| with ||x|| = 1
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (it > 1 && std::abs(estimate - previous) < tol * estimate) {
            result.value = estimate;
            result.converged = true;
            return result;
        }
    }
    result.value = estimate;
    result.converged = false;
    return result;
}

}  // namespace neteffect
