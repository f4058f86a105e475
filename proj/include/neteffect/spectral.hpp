#pragma once

#include "neteffect/types.hpp"

namespace neteffect {

struct SpectralResult {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Largest absolute eigenvalue of a symmetric sparse matrix by power
/// iteration with a deterministic all-ones start vector. Stops when the
/// relative change of the estimate drops below tol; an all-zero matrix
/// yields 0, and hitting max_iter returns the last estimate unconverged.
SpectralResult spectral_radius(const SparseWeightedMatrix& a, double tol = 1e-6,
                               int max_iter = 100);

/// y = A x for a CSR matrix. Row-partitioned when threads > 1; per-row
/// reduction order is fixed, so the result does not depend on the worker count.
void spmv(const SparseWeightedMatrix& a, const double* x, double* y, int threads = 1);

/// Y = A X for dense row-major X, Y of width c.
void spmm(const SparseWeightedMatrix& a, const double* x, double* y, std::size_t c,
          int threads = 1);

}  // namespace neteffect
