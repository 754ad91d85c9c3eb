#pragma once

#include <cstdint>
#include <vector>

#include "polywell/matrix.hpp"

namespace polywell {

/// X = U * diag(sigma) * V^T with U, V orthonormal and sigma sorted
/// descending, all >= 0.
struct SvdResult {
    Matrix U;
    std::vector<double> sigma;
    Matrix V;
};

/// One-sided Jacobi SVD. Matrices here are tiny (n <= 6), so robustness is
/// the only concern: sweeps rotate column pairs of a working copy until all
/// columns are mutually orthogonal relative to 1e-14 * |X|^2, capped at
/// 100 n^2 sweeps (SvdNonConvergence past the cap). Zero columns get their
/// U columns from a Gram-Schmidt completion so U stays orthonormal on
/// rank-deficient input.
SvdResult svd(const Matrix& x);

/// Seeded Haar-ish rotation: orthonormalize a Gaussian matrix, flip one
/// column if det == -1. Deterministic per seed.
Matrix random_rotation(int n, std::uint64_t seed);

} // namespace polywell
