#include <doctest.h>

#include "polywell/certify.hpp"
#include "polywell/decompose.hpp"
#include "polywell/errors.hpp"
#include "support.hpp"

using namespace polywell;
using support::certified_random_wells;
using support::diag;
using support::mat2;
using support::random_matrix;
using support::rel_err;

namespace {

Decomposition build_for(const DoubleWell& dw) { return build(certify(dw)); }

} // namespace

TEST_SUITE("decompose") {

TEST_CASE("build accepts only certified instances") {
    const DoubleWell good(Matrix::identity(2), -1.0 * Matrix::identity(2));
    const Decomposition dec = build_for(good);
    CHECK(dec.n == 2);
    CHECK(dec.a == 1.0);
    CHECK(dec.Q == Matrix::identity(2));
    CHECK(frobenius_norm_sq(dec.B) == 0.0);
    CHECK(dec.null_coeff == doctest::Approx(-8.0).epsilon(1e-12));

    const Certificate bad = certify(DoubleWell(diag({2, 1}), Matrix(2)));
    CHECK_THROWS_AS(build(bad), NotPolyconvexError);
}

TEST_CASE("rotation wells carry the frame into the parameters") {
    const Matrix r = random_rotation(2, 99);
    const Decomposition dec = build_for(DoubleWell(2.0 * r, Matrix(2)));
    CHECK(dec.a == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(support::max_abs_diff(dec.Q, r) < 1e-10);
    CHECK(support::max_abs_diff(dec.B, r) < 1e-12);
    CHECK(dec.null_coeff == doctest::Approx(-8.0).epsilon(1e-10));
}

TEST_CASE("coincident wells decompose with vanishing null part") {
    const Matrix m = mat2(1, -2, 0.5, 3);
    const Decomposition dec = build_for(DoubleWell(m, m));
    CHECK(dec.a == 0.0);
    CHECK(dec.null_coeff == 0.0);
    Rng rng(17);
    for (int k = 0; k < 20; ++k) {
        const Matrix x = random_matrix(rng, 2);
        CHECK(eval_null(dec, x) == 0.0);
        CHECK(rel_err(eval_convex(dec, x), eval(DoubleWell(m, m), x)) < 1e-10);
    }
}

TEST_CASE("convex part pins at the model instance") {
    const Decomposition dec = build_for(DoubleWell(Matrix::identity(2), -1.0 * Matrix::identity(2)));
    CHECK(eval_convex(dec, Matrix(2)) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(eval_convex(dec, mat2(0, 1, 0, 0)) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(eval_null(dec, Matrix::identity(2)) == doctest::Approx(-8.0).epsilon(1e-12));
    Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        const Matrix x = random_matrix(rng, 2);
        CHECK(rel_err(eval_null(dec, x), -8.0 * det(x)) < 1e-12);
    }
}

TEST_CASE("convex part pins at the three dimensional model") {
    const Decomposition dec =
        build_for(DoubleWell(Matrix::identity(3), -1.0 * Matrix::identity(3)));
    CHECK(eval_convex(dec, Matrix::identity(3)) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(eval_null(dec, Matrix::identity(3)) == doctest::Approx(-24.0).epsilon(1e-12));
    // null part is the second elementary symmetric polynomial, scaled
    Rng rng(6);
    for (int k = 0; k < 50; ++k) {
        const Matrix x = random_matrix(rng, 3);
        CHECK(rel_err(eval_null(dec, x), -8.0 * s2(matmul(dec.Q.transpose(), x))) < 1e-12);
    }
}

TEST_CASE("the split is exact") {
    for (int k = 0; k < 200; ++k) {
        const int n = 2 + k % 3;
        const DoubleWell dw = certified_random_wells(500 + k, n);
        const Decomposition dec = build_for(dw);
        Rng rng = Rng::derived(77, static_cast<std::uint64_t>(k));
        for (int j = 0; j < 10; ++j) {
            const Matrix x = dw.mid + random_matrix(rng, n, -4.0, 4.0);
            const double f = eval(dw, x);
            const double split = eval_convex(dec, x) + eval_null(dec, x);
            CHECK(std::abs(split - f) <= 1e-10 * (1.0 + std::abs(f)));
        }
    }
}

TEST_CASE("two dimensional convex part matches the frame expression") {
    const DoubleWell dw = certified_random_wells(321, 2);
    const Decomposition dec = build_for(dw);
    Rng rng(55);
    for (int k = 0; k < 100; ++k) {
        const Matrix x = random_matrix(rng, 2, -3.0, 3.0);
        const Matrix y = matmul(dec.Q.transpose(), x - dec.B);
        const double yy = frobenius_norm_sq(y);
        const double a2 = dec.a * dec.a;
        const double sk = y(1, 0) - y(0, 1);
        const double want = yy * yy + 4.0 * a2 * sk * sk + 4.0 * a2 * a2;
        CHECK(rel_err(eval_convex(dec, x), want) < 1e-10);
        // and the surviving part of the model energy relates through scaling
        const double g = a2 * a2 * g2_frame((1.0 / dec.a) * y);
        const double total = eval_convex(dec, x) + eval_null(dec, x);
        CHECK(rel_err(total, g + 4.0 * a2 * sk * sk) < 1e-9);
    }
}

TEST_CASE("gradient of the convex part matches differences") {
    const DoubleWell dw(Matrix::identity(2), -1.0 * Matrix::identity(2));
    const Decomposition dec = build_for(dw);
    // frozen value at a nilpotent point
    const Matrix g = convex_gradient(dec, mat2(0, 1, 0, 0));
    CHECK(g(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(g(0, 1) == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(g(1, 0) == doctest::Approx(-8.0).epsilon(1e-12));
    CHECK(g(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(frobenius_norm_sq(convex_gradient(dec, dec.B)) == 0.0);

    for (int k = 0; k < 60; ++k) {
        const int n = 2 + k % 3;
        const DoubleWell rdw = certified_random_wells(900 + k, n);
        const Decomposition rdec = build_for(rdw);
        Rng rng = Rng::derived(901, static_cast<std::uint64_t>(k));
        const Matrix x = rdw.mid + random_matrix(rng, n, -3.0, 3.0);
        const Matrix got = convex_gradient(rdec, x);
        const Matrix fd =
            fd_gradient([&](const Matrix& z) { return eval_convex(rdec, z); }, x);
        const double scale = 1.0 + std::sqrt(frobenius_norm_sq(fd));
        CHECK(support::max_abs_diff(got, fd) / scale < 1e-6);
    }
}

TEST_CASE("convex part is midpoint convex with interior margin") {
    for (int k = 0; k < 40; ++k) {
        const int n = 2 + k % 3;
        const DoubleWell dw = certified_random_wells(1500 + k, n);
        const Decomposition dec = build_for(dw);
        Rng rng = Rng::derived(1501, static_cast<std::uint64_t>(k));
        for (int j = 0; j < 50; ++j) {
            const Matrix x = dw.mid + random_matrix(rng, n, -3.0, 3.0);
            Matrix xp = dw.mid + random_matrix(rng, n, -3.0, 3.0);
            const double fx = eval_convex(dec, x);
            const double fxp = eval_convex(dec, xp);
            const double fm = eval_convex(dec, 0.5 * (x + xp));
            const double scale = 1.0 + std::max(std::abs(fx), std::abs(fxp));
            CHECK(fm <= 0.5 * (fx + fxp) + 1e-12 * scale);
        }
    }
}

TEST_CASE("second differences of the convex part are nonnegative") {
    for (int k = 0; k < 20; ++k) {
        const int n = 2 + k % 3;
        const DoubleWell dw = certified_random_wells(2500 + k, n);
        const Decomposition dec = build_for(dw);
        Rng rng = Rng::derived(2501, static_cast<std::uint64_t>(k));
        for (int j = 0; j < 10; ++j) {
            const Matrix x = dw.mid + random_matrix(rng, n, -3.0, 3.0);
            Matrix d = random_matrix(rng, n, -1.0, 1.0);
            const double dn = std::sqrt(frobenius_norm_sq(d));
            if (dn > 0.0) d *= 1.0 / dn;
            const auto phi = [&](double t) { return eval_convex(dec, x + t * d); };
            const double second = fd_second_difference(phi, fd_second_step(x));
            const double scale = 1.0 + std::abs(eval_convex(dec, x));
            CHECK(second >= -1e-9 * scale);
        }
    }
}

} // TEST_SUITE
