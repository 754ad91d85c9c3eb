#include "polywell/identities.hpp"

#include <cmath>

#include "polywell/energy.hpp"
#include "polywell/fd.hpp"
#include "polywell/matrix.hpp"
#include "polywell/rng.hpp"
#include "polywell/svd.hpp"

namespace polywell {

namespace {

Matrix random_matrix(Rng& rng, int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-2.0, 2.0);
    return m;
}

double tr_square(const Matrix& x) {
    double t = 0.0;
    const int n = x.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t += x(i, j) * x(j, i);
    return t;
}

IdentityResult finish(std::string name, std::uint64_t samples, double max_residual,
                      double tolerance) {
    return {std::move(name), samples, max_residual, tolerance,
            max_residual <= tolerance};
}

} // namespace

std::vector<IdentityResult> run_identity_suite(std::uint64_t seed) {
    std::vector<IdentityResult> out;
    const std::uint64_t nsamp = 1000;

    {
        double worst_trace = 0.0, worst_skew = 0.0;
        for (std::uint64_t k = 0; k < nsamp; ++k) {
            Rng rng = Rng::derived(seed, k);
            const int n = 2 + static_cast<int>(k % 5);
            const Matrix x = random_matrix(rng, n);
            const double scale = 1.0 + frobenius_norm_sq(x);
            const double t = trace(x);
            const double t2 = tr_square(x);
            worst_trace = std::max(worst_trace,
                                   std::abs(t * t - t2 - 2.0 * s2(x)) / scale);
            worst_skew = std::max(
                worst_skew,
                std::abs(frobenius_norm_sq(x) - t2 -
                         2.0 * frobenius_norm_sq(skew_part(x))) / scale);
        }
        out.push_back(finish("trace_minor", nsamp, worst_trace, 1e-10));
        out.push_back(finish("skew_norm", nsamp, worst_skew, 1e-10));
    }

    const DoubleWell dw2(Matrix::identity(2), -1.0 * Matrix::identity(2));
    {
        double worst_closed = 0.0, worst_sos = 0.0, worst_frame = 0.0;
        for (std::uint64_t k = 0; k < nsamp; ++k) {
            Rng rng = Rng::derived(seed ^ 0x2d2d2ull, k);
            const Matrix x = random_matrix(rng, 2);
            const double n2 = frobenius_norm_sq(x);
            const double scale = 1.0 + n2 * n2;
            const double skew_term = x(1, 0) - x(0, 1);
            const double closed = n2 * n2 + 4.0 * skew_term * skew_term - 8.0 * det(x) + 4.0;
            worst_closed = std::max(worst_closed, std::abs(eval(dw2, x) - closed) / scale);
            // the off-diagonal square is (X21 + X12)^2: the sum, not the
            // difference, is what vanishes on rotations
            const double diag_term = x(0, 0) - x(1, 1);
            const double offdiag_sum = x(1, 0) + x(0, 1);
            const double sos = (n2 - 2.0) * (n2 - 2.0) + 4.0 * diag_term * diag_term +
                               4.0 * offdiag_sum * offdiag_sum;
            worst_sos = std::max(worst_sos, std::abs(g2_frame(x) - sos) / scale);
            const Matrix r = random_rotation(2, seed ^ (0xf0f0ull + k));
            worst_frame = std::max(
                worst_frame, std::abs(g2_frame(matmul(r, x)) - g2_frame(x)) / scale);
        }
        out.push_back(finish("closed_form_2x2", nsamp, worst_closed, 1e-10));
        out.push_back(finish("sos_2x2", nsamp, worst_sos, 1e-10));
        out.push_back(finish("frame_invariance_2x2", nsamp, worst_frame, 1e-10));
    }

    {
        double worst = 0.0;
        for (std::uint64_t k = 0; k < 100; ++k)
            worst = std::max(worst, std::abs(g2_frame(random_rotation(2, seed ^ (0xabcdull + k)))));
        out.push_back(finish("rotation_vanishing_2x2", 100, worst, 1e-10));
    }

    const DoubleWell dw3(Matrix::identity(3), -1.0 * Matrix::identity(3));
    {
        double worst_closed = 0.0, worst_iso = 0.0;
        for (std::uint64_t k = 0; k < nsamp; ++k) {
            Rng rng = Rng::derived(seed ^ 0x33333ull, k);
            const Matrix x = random_matrix(rng, 3);
            const double n2 = frobenius_norm_sq(x);
            const double scale = 1.0 + n2 * n2;
            const double closed = n2 * n2 + 2.0 * n2 +
                                  8.0 * frobenius_norm_sq(skew_part(x)) + 9.0 - 8.0 * s2(x);
            worst_closed = std::max(worst_closed, std::abs(eval(dw3, x) - closed) / scale);
            const Matrix r = random_rotation(3, seed ^ (0x77777ull + k));
            const Matrix conj = matmul(matmul(r, x), r.transpose());
            worst_iso = std::max(worst_iso, std::abs(eval(dw3, conj) - eval(dw3, x)) / scale);
        }
        out.push_back(finish("closed_form_3x3", nsamp, worst_closed, 1e-10));
        out.push_back(finish("isotropy_3x3", nsamp, worst_iso, 1e-9));
    }

    out.push_back(finish("origin_value_3x3", 1,
                         std::abs(g3_origin(Matrix::identity(3)) - 27.0), 0.0));

    {
        double worst = 0.0;
        const Matrix zero(3);
        const double h = fd_second_step(zero);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const auto phi = [&](double t) {
                    Matrix m(3);
                    m(i, j) = t;
                    return g3_sphere(m);
                };
                worst = std::max(worst, std::abs(fd_second_difference(phi, h) - (-12.0)));
            }
        out.push_back(finish("sphere_hessian_3x3", 9, worst, 1e-4));
    }

    return out;
}

bool all_pass(const std::vector<IdentityResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace polywell
