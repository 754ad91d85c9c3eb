#include "polywell/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polywell/rng.hpp"

namespace polywell {

namespace {

double col_dot(const Matrix& m, int ci, int cj) {
    double s = 0.0;
    for (int r = 0; r < m.dim(); ++r) s += m(r, ci) * m(r, cj);
    return s;
}

void rotate_cols(Matrix& m, int ci, int cj, double cs, double sn) {
    for (int r = 0; r < m.dim(); ++r) {
        const double a = m(r, ci);
        const double b = m(r, cj);
        m(r, ci) = cs * a - sn * b;
        m(r, cj) = sn * a + cs * b;
    }
}

} // namespace

SvdResult svd(const Matrix& x) {
    x.check_finite();
    const int n = x.dim();
    Matrix w = x;                    // columns converge to U * diag(sigma)
    Matrix v = Matrix::identity(n);  // accumulates the right rotations

    const double norm_sq_total = frobenius_norm_sq(x);
    const double off_tol = 1e-14 * (norm_sq_total > 0.0 ? norm_sq_total : 1.0);
    const int max_sweeps = 100 * n * n;

    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double aii = col_dot(w, i, i);
                const double ajj = col_dot(w, j, j);
                const double aij = col_dot(w, i, j);
                if (std::abs(aij) <= off_tol) continue;
                converged = false;
                const double zeta = (ajj - aii) / (2.0 * aij);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                rotate_cols(w, i, j, cs, sn);
                rotate_cols(v, i, j, cs, sn);
            }
        }
    }
    if (!converged) throw SvdNonConvergence("svd: no convergence after " +
                                            std::to_string(max_sweeps) + " sweeps");

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) sigma[j] = std::sqrt(col_dot(w, j, j));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return sigma[a] > sigma[b]; });

    SvdResult res{Matrix(n), std::vector<double>(n), Matrix(n)};
    std::vector<bool> filled(n, false);
    // a column whose norm sits at rounding level has no usable direction;
    // normalizing it would promote noise into U, so leave it for completion
    const double rank_tol = 1e-13 * sigma[order[0]];
    for (int j = 0; j < n; ++j) {
        const int src = order[j];
        res.sigma[j] = sigma[src];
        for (int r = 0; r < n; ++r) res.V(r, j) = v(r, src);
        if (sigma[src] > rank_tol && sigma[src] > 0.0) {
            for (int r = 0; r < n; ++r) res.U(r, j) = w(r, src) / sigma[src];
            filled[j] = true;
        }
    }

    // complete the remaining columns: orthogonalize canonical vectors
    // against everything already present
    const double drop_tol = 1e-8;
    for (int j = 0; j < n; ++j) {
        if (filled[j]) continue;
        for (int cand = 0; cand < n; ++cand) {
            std::vector<double> col(n, 0.0);
            col[cand] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (int k = 0; k < n; ++k) {
                    if (!filled[k]) continue;
                    double proj = 0.0;
                    for (int r = 0; r < n; ++r) proj += col[r] * res.U(r, k);
                    for (int r = 0; r < n; ++r) col[r] -= proj * res.U(r, k);
                }
            }
            const double len = std::sqrt(norm_sq(col));
            if (len > drop_tol) {
                for (int r = 0; r < n; ++r) res.U(r, j) = col[r] / len;
                filled[j] = true;
                break;
            }
        }
    }
    return res;
}

Matrix random_rotation(int n, std::uint64_t seed) {
    if (n < 2) throw ValidationError("random_rotation: dimension must be >= 2");
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Matrix g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = rng.normal();

        // modified Gram-Schmidt on columns, one re-orthogonalization pass
        bool degenerate = false;
        for (int j = 0; j < n && !degenerate; ++j) {
            for (int pass = 0; pass < 2; ++pass) {
                for (int k = 0; k < j; ++k) {
                    const double proj = col_dot(g, j, k);
                    for (int r = 0; r < n; ++r) g(r, j) -= proj * g(r, k);
                }
            }
            const double len = std::sqrt(col_dot(g, j, j));
            if (len < 1e-8) {
                degenerate = true;
                break;
            }
            for (int r = 0; r < n; ++r) g(r, j) /= len;
        }
        if (degenerate) continue; // vanishing pivot, draw a fresh matrix

        if (det(g) < 0.0)
            for (int r = 0; r < n; ++r) g(r, n - 1) = -g(r, n - 1);
        return g;
    }
    throw ValidationError("random_rotation: repeated degenerate draws"); // practically unreachable
}

} // namespace polywell
