#include "neteffect/svd.hpp"

#include <algorithm>
#include <stdexcept>

#include "neteffect/parallel.hpp"
#include "neteffect/rng.hpp"

namespace neteffect {

namespace {

/// Y = A X for dense X (n x k), row-partitioned.
Eigen::MatrixXd sparse_times_dense(const SparseWeightedMatrix& a, const Eigen::MatrixXd& x,
                                   int threads) {
    Eigen::MatrixXd y(a.n, x.cols());
    parallel_for(0, a.n, threads, [&](std::int64_t i) {
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(x.cols());
        for (std::int64_t k = a.offsets[i]; k < a.offsets[i + 1]; ++k)
            acc += a.values[k] * x.row(a.cols[k]);
        y.row(i) = acc;
    });
    return y;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& y) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

}  // namespace

TruncatedSvd truncated_svd(const SparseWeightedMatrix& w, int rank, std::uint64_t seed,
                           int threads) {
    if (rank < 1) throw std::invalid_argument("rank must be at least 1");
    const std::int64_t n = w.n;
    TruncatedSvd result;
    if (n == 0 || w.nnz() == 0) {
        result.u.resize(n, 0);
        result.sigma.resize(0);
        result.v.resize(n, 0);
        result.rank_reduced = rank > 0;
        return result;
    }

    const int requested = static_cast<int>(std::min<std::int64_t>(rank, n));
    const int oversample = 10;
    const int sketch = static_cast<int>(std::min<std::int64_t>(requested + oversample, n));

    Eigen::MatrixXd omega(n, sketch);
    Rng rng(derive_seed(seed, 0x73766400u));
    for (std::int64_t i = 0; i < n; ++i)
        for (int j = 0; j < sketch; ++j) omega(i, j) = rng.gaussian();

    const SparseWeightedMatrix wt = w.transposed();
    Eigen::MatrixXd q = orthonormalize(sparse_times_dense(w, omega, threads));
    // Two rounds of subspace iteration sharpen the spectral gap enough for
    // the tolerances used here.
    for (int it = 0; it < 2; ++it) {
        const Eigen::MatrixXd z = orthonormalize(sparse_times_dense(wt, q, threads));
        q = orthonormalize(sparse_times_dense(w, z, threads));
    }

    const Eigen::MatrixXd b = sparse_times_dense(wt, q, threads).transpose();  // Q^T W
    Eigen::BDCSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();

    int achievable = 0;
    const double cutoff = sigma.size() > 0 ? sigma(0) * 1e-12 : 0.0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cutoff) ++achievable;
    const int kept = std::min(requested, achievable);

    result.u = q * svd.matrixU().leftCols(kept);
    result.sigma = sigma.head(kept);
    result.v = svd.matrixV().leftCols(kept);
    result.rank_reduced = kept < rank;
    return result;
}

}  // namespace neteffect
