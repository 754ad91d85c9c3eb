#pragma once

#include <cmath>
#include <cstdint>

#include "polywell/energy.hpp"
#include "polywell/fd.hpp"
#include "polywell/matrix.hpp"
#include "polywell/rng.hpp"
#include "polywell/svd.hpp"

namespace support {

using namespace polywell;

inline Matrix random_matrix(Rng& rng, int n, double lo = -2.0, double hi = 2.0) {
    Matrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

inline Matrix mat2(double a, double b, double c, double d) {
    return Matrix::from_rows({{a, b}, {c, d}});
}

inline Matrix diag(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

// Wells built to be polyconvex by construction: X1 = B + a Q, X2 = B - a Q.
inline DoubleWell certified_random_wells(std::uint64_t seed, int n) {
    Rng rng(seed);
    const double a = rng.uniform(0.25, 2.0);
    const Matrix q = random_rotation(n, seed ^ 0x51ull);
    const Matrix b = random_matrix(rng, n);
    return DoubleWell(b + a * q, b - a * q);
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / (1.0 + std::abs(want));
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

inline double orthonormality_defect(const Matrix& q) {
    return max_abs_diff(matmul(q.transpose(), q), Matrix::identity(q.dim()));
}

} // namespace support
