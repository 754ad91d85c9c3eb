// Acceptance gate: one check per release criterion, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "polywell/certify.hpp"
#include "polywell/decompose.hpp"
#include "polywell/energy.hpp"
#include "polywell/fd.hpp"
#include "polywell/fem.hpp"
#include "polywell/matrix.hpp"
#include "polywell/minimize.hpp"
#include "polywell/rng.hpp"
#include "polywell/svd.hpp"
#include "support.hpp"

using namespace polywell;
using support::certified_random_wells;
using support::diag;
using support::random_matrix;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1e", x);
    return buf;
}

double mesh_field_max(const VectorField& y) {
    double m = 0.0;
    for (const auto& v : y.values) m = std::max({m, std::abs(v[0]), std::abs(v[1])});
    return m;
}

VectorField affine_field(const Mesh2& mesh, double m00, double m01, double m10, double m11) {
    return interpolate(mesh, [&](double x1, double x2) {
        return std::array<double, 2>{m00 * x1 + m01 * x2, m10 * x1 + m11 * x2};
    });
}

// 1. splitting identities for the second symmetric function and the skew part
Outcome criterion_trace_identities() {
    Rng rng(101);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const int n = 2 + k % 5;
        const Matrix x = random_matrix(rng, n);
        const Matrix xx = matmul(x, x);
        const double tr = trace(x);
        const double scale = 1.0 + frobenius_norm_sq(x);
        const double r1 = std::abs(tr * tr - trace(xx) - 2.0 * s2(x)) / scale;
        const double r2 =
            std::abs(frobenius_norm_sq(x) - trace(xx) - 2.0 * frobenius_norm_sq(skew_part(x))) /
            scale;
        worst = std::max({worst, r1, r2});
    }
    return {worst <= 1e-10,
            "splitting identities over 1000 draws, worst scaled residual " + sci(worst)};
}

// 2. closed form and sum-of-squares certificate in two dimensions
Outcome criterion_2x2_forms() {
    const DoubleWell dw(Matrix::identity(2), -1.0 * Matrix::identity(2));
    Rng rng(102);
    double worst_f = 0.0;
    double worst_sos = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Matrix x = random_matrix(rng, 2);
        const double xx = frobenius_norm_sq(x);
        const double skew = x(1, 0) - x(0, 1);
        const double closed = xx * xx + 4.0 * skew * skew - 8.0 * det(x) + 4.0;
        worst_f = std::max(worst_f, std::abs(eval(dw, x) - closed));
        // the off-diagonal square uses the sum X21 + X12: that combination,
        // not the difference, vanishes on rotations together with the rest
        const double d1 = xx - 2.0;
        const double d2 = x(0, 0) - x(1, 1);
        const double d3 = x(1, 0) + x(0, 1);
        const double sos = d1 * d1 + 4.0 * d2 * d2 + 4.0 * d3 * d3;
        worst_sos = std::max(worst_sos, std::abs(g2_frame(x) - sos));
    }
    double worst_rot = 0.0;
    for (int k = 0; k < 100; ++k)
        worst_rot = std::max(worst_rot, std::abs(g2_frame(random_rotation(2, 1000 + k))));
    const bool pass = worst_f <= 1e-10 && worst_sos <= 1e-10 && worst_rot <= 1e-10;
    return {pass, "2x2 closed form residual " + sci(worst_f) + ", SOS residual " + sci(worst_sos) +
                      ", rotation values " + sci(worst_rot)};
}

// 3. three dimensional closed form, isotropy, origin pin, concave directions
Outcome criterion_3x3_forms() {
    const DoubleWell dw(Matrix::identity(3), -1.0 * Matrix::identity(3));
    Rng rng(103);
    double worst_closed = 0.0;
    double worst_iso = 0.0;
    for (int k = 0; k < 300; ++k) {
        const Matrix x = random_matrix(rng, 3);
        const double xx = frobenius_norm_sq(x);
        const double closed =
            xx * xx + 2.0 * xx + 8.0 * frobenius_norm_sq(skew_part(x)) + 9.0 - 8.0 * s2(x);
        const double f = eval(dw, x);
        worst_closed = std::max(worst_closed, std::abs(f - closed) / (1.0 + xx * xx));
        const Matrix r = random_rotation(3, 2000 + static_cast<std::uint64_t>(k));
        const Matrix conj = matmul(matmul(r, x), r.transpose());
        worst_iso = std::max(worst_iso, std::abs(eval(dw, conj) - f) / (1.0 + std::abs(f)));
    }
    const bool origin_exact = g3_origin(Matrix::identity(3)) == 27.0;
    double worst_fd = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Matrix dir(3);
            dir(i, j) = 1.0;
            const auto phi = [&](double t) { return g3_sphere(t * dir); };
            worst_fd = std::max(worst_fd,
                                std::abs(fd_second_difference(phi, fd_second_step(Matrix(3))) + 12.0));
        }
    const bool pass = worst_closed <= 1e-10 && worst_iso <= 1e-9 && origin_exact && worst_fd <= 1e-4;
    return {pass, "3x3 closed form " + sci(worst_closed) + ", isotropy " + sci(worst_iso) +
                      ", origin value " + (origin_exact ? std::string("27 exact") : "WRONG") +
                      ", curvature gap " + sci(worst_fd)};
}

// 4. certification verdicts with the analytic witness and a difference oracle
Outcome criterion_certify() {
    const auto t0 = std::chrono::steady_clock::now();
    const Certificate good = certify(DoubleWell(Matrix::identity(2), -1.0 * Matrix::identity(2)));
    const bool good_ok = good.polyconvex() && std::abs(good.a - 1.0) <= 1e-12;

    const DoubleWell bad(diag({2, 1}), Matrix(2));
    const Certificate cert = certify(bad);
    bool bad_ok = !cert.polyconvex() && cert.witness.has_value() &&
                  std::abs(cert.violation_value + 3.0) <= 1e-9;
    double fd_gap = 1.0;
    if (bad_ok) {
        const Matrix dir = outer(cert.witness->u, cert.witness->v);
        const auto phi = [&](double t) { return eval_g(bad, t * dir); };
        fd_gap = std::abs(fd_second_difference(phi, fd_second_step(Matrix(2))) -
                          cert.violation_value);
        bad_ok = fd_gap <= 1e-6;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = good_ok && bad_ok && secs < 0.1;
    return {pass, "verdicts with witness value " + sci(cert.violation_value) + ", oracle gap " +
                      sci(fd_gap) + ", " + sci(secs) + " s (bound 0.1 s)"};
}

// 5. exact energy split and midpoint convexity of the convex part
Outcome criterion_split() {
    double worst_split = 0.0;
    double worst_mid = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const int n = 2 + k % 3;
        const DoubleWell dw = certified_random_wells(5000 + k, n);
        const Decomposition dec = build(certify(dw));
        Rng rng = Rng::derived(5001, static_cast<std::uint64_t>(k));
        for (int j = 0; j < 3; ++j) {
            const Matrix x = dw.mid + random_matrix(rng, n, -4.0, 4.0);
            const Matrix xp = dw.mid + random_matrix(rng, n, -4.0, 4.0);
            const double f = eval(dw, x);
            const double split = eval_convex(dec, x) + eval_null(dec, x);
            worst_split = std::max(worst_split, std::abs(split - f) / (1.0 + std::abs(f)));
            const double fx = eval_convex(dec, x);
            const double fxp = eval_convex(dec, xp);
            const double fm = eval_convex(dec, 0.5 * (x + xp));
            const double scale = 1.0 + std::max(std::abs(fx), std::abs(fxp));
            worst_mid = std::max(worst_mid, (fm - 0.5 * (fx + fxp)) / scale);
        }
    }
    const bool pass = worst_split <= 1e-10 && worst_mid <= 1e-12;
    return {pass, "split residual " + sci(worst_split) + " over 1000 instances, midpoint violation " +
                      sci(worst_mid)};
}

// 6. the null part of the energy sees only boundary values
Outcome criterion_null_invariance() {
    const auto t0 = std::chrono::steady_clock::now();
    const Decomposition dec =
        build(certify(DoubleWell(Matrix::identity(2), -1.0 * Matrix::identity(2))));
    Rng rng(106);
    double worst = 0.0;
    for (int m : {2, 4, 8}) {
        const Mesh2 mesh = unit_square_mesh(m);
        for (int p = 0; p < 100; ++p) {
            const VectorField y1 = affine_field(mesh, rng.uniform(-2, 2), rng.uniform(-2, 2),
                                                rng.uniform(-2, 2), rng.uniform(-2, 2));
            VectorField y2 = y1;
            for (int i = 0; i < static_cast<int>(mesh.node_count()); ++i) {
                if (mesh.is_boundary(i)) continue;
                y2.values[static_cast<std::size_t>(i)][0] += rng.uniform(-1, 1);
                y2.values[static_cast<std::size_t>(i)][1] += rng.uniform(-1, 1);
            }
            const auto mass = [&](const VectorField& y) {
                return integrate(mesh, y,
                                 [&](const Matrix& g) { return std::abs(eval_null(dec, g)); });
            };
            const double scale = 1.0 + std::max(mass(y1), mass(y2));
            worst = std::max(worst, null_lagrangian_gap(mesh, y1, y2, dec) / scale);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = worst <= 1e-9 && secs < 5.0;
    return {pass, "300 boundary-matched pairs on three meshes, worst scaled gap " + sci(worst) +
                      ", " + sci(secs) + " s (bound 5 s)"};
}

// 7. Dirichlet solve with a well as boundary gradient
Outcome criterion_solve_well_boundary() {
    const auto t0 = std::chrono::steady_clock::now();
    const DoubleWell dw(Matrix::identity(2), -1.0 * Matrix::identity(2));
    const Mesh2 mesh = unit_square_mesh(8);
    const VectorField y0 = affine_field(mesh, 1, 0, 0, 1);
    const SolveResult res = minimize_dirichlet(dw, mesh, y0);
    double dev = 0.0;
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
        dev = std::max(dev, std::abs(res.y_star.values[i][0] - mesh.nodes[i][0]));
        dev = std::max(dev, std::abs(res.y_star.values[i][1] - mesh.nodes[i][1]));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = res.converged && res.energy_total <= 1e-8 && dev <= 1e-6 && secs < 10.0;
    return {pass, "boundary y=x on the 8x8 mesh: I=" + sci(res.energy_total) + ", deviation " +
                      sci(dev) + ", " + sci(secs) + " s (bound 10 s)"};
}

// 8. Dirichlet solve with the midpoint as boundary data
Outcome criterion_solve_midpoint_boundary() {
    const DoubleWell dw(Matrix::identity(2), -1.0 * Matrix::identity(2));
    const Mesh2 mesh = unit_square_mesh(8);
    const VectorField y0 = affine_field(mesh, 0, 0, 0, 0);
    const SolveResult res = minimize_dirichlet(dw, mesh, y0);
    const double dev = mesh_field_max(res.y_star);
    const bool pass = res.converged && std::abs(res.energy_total - 4.0) <= 1e-6 && dev <= 1e-6;
    return {pass, "boundary y=0 on the 8x8 mesh: I=" + sci(res.energy_total) +
                      " against the relaxed floor 4, deviation " + sci(dev)};
}

// 9. uniqueness of the convex reformulation's minimizer
Outcome criterion_uniqueness() {
    const DoubleWell dw(Matrix::identity(2), -1.0 * Matrix::identity(2));
    const Mesh2 mesh = unit_square_mesh(4);
    const VectorField y0 = affine_field(mesh, 0.5, 0, 0, 0.5);
    SolveOptions opts;
    opts.grad_tol = 1e-10;
    const UniquenessReport rep = uniqueness_probe(dw, mesh, y0, opts, 5, 9);
    bool all_converged = true;
    double lo = rep.results.front().energy_convex;
    double hi = lo;
    for (const SolveResult& r : rep.results) {
        all_converged = all_converged && r.converged;
        lo = std::min(lo, r.energy_convex);
        hi = std::max(hi, r.energy_convex);
    }
    const double rel_spread = (hi - lo) / (1.0 + std::abs(lo));
    const bool pass = all_converged && rep.max_pairwise_dist <= 1e-5 && rel_spread <= 1e-8;
    return {pass, "5 starts on the 4x4 mesh: max pairwise distance " + sci(rep.max_pairwise_dist) +
                      ", minimum value spread " + sci(rel_spread)};
}

// 10. analytic gradients against central differences
Outcome criterion_gradients() {
    double worst_f = 0.0;
    Rng rng(110);
    for (int k = 0; k < 200; ++k) {
        const int n = 2 + k % 2;
        const DoubleWell dw(random_matrix(rng, n), random_matrix(rng, n));
        const Matrix x = random_matrix(rng, n, -3.0, 3.0);
        const Matrix fd = fd_gradient([&](const Matrix& z) { return eval(dw, z); }, x);
        const double scale = 1.0 + std::sqrt(frobenius_norm_sq(fd));
        worst_f = std::max(worst_f, support::max_abs_diff(gradient(dw, x), fd) / scale);
    }
    double worst_c = 0.0;
    for (int k = 0; k < 200; ++k) {
        const int n = 2 + k % 3;
        const DoubleWell dw = certified_random_wells(7000 + k, n);
        const Decomposition dec = build(certify(dw));
        Rng drng = Rng::derived(7001, static_cast<std::uint64_t>(k));
        const Matrix x = dw.mid + random_matrix(drng, n, -3.0, 3.0);
        const Matrix fd = fd_gradient([&](const Matrix& z) { return eval_convex(dec, z); }, x);
        const double scale = 1.0 + std::sqrt(frobenius_norm_sq(fd));
        worst_c = std::max(worst_c, support::max_abs_diff(convex_gradient(dec, x), fd) / scale);
    }
    const bool pass = worst_f <= 1e-6 && worst_c <= 1e-6;
    return {pass, "energy gradient error " + sci(worst_f) + ", convex part gradient error " +
                      sci(worst_c) + ", 200 points each"};
}

// 11. rank-one sampling finds no violation on certified instances
Outcome criterion_rank_one_soundness() {
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const int n = 2 + k % 3;
        const DoubleWell dw = certified_random_wells(8000 + k, n);
        const RankOneSampleReport rep = sample_rank_one(dw, 10000, 8100 + static_cast<std::uint64_t>(k));
        const double a4 = frobenius_norm_sq(dw.delta) * frobenius_norm_sq(dw.delta);
        const double z4 = rep.max_z_norm * rep.max_z_norm * rep.max_z_norm * rep.max_z_norm;
        const double scale = 1.0 + a4 + z4;
        worst = std::max(worst, -rep.min_value / scale);
    }
    const bool pass = worst <= 1e-9;
    return {pass, "20 certified instances, 10000 samples each, worst scaled minimum " +
                      sci(-worst)};
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Entry> entries = {
        {"criterion 1", criterion_trace_identities},
        {"criterion 2", criterion_2x2_forms},
        {"criterion 3", criterion_3x3_forms},
        {"criterion 4", criterion_certify},
        {"criterion 5", criterion_split},
        {"criterion 6", criterion_null_invariance},
        {"criterion 7", criterion_solve_well_boundary},
        {"criterion 8", criterion_solve_midpoint_boundary},
        {"criterion 9", criterion_uniqueness},
        {"criterion 10", criterion_gradients},
        {"criterion 11", criterion_rank_one_soundness},
    };
    int failures = 0;
    for (const Entry& e : entries) {
        Outcome out{false, ""};
        try {
            out = e.run();
        } catch (const std::exception& ex) {
            out = {false, std::string("exception: ") + ex.what()};
        }
        if (!out.pass) ++failures;
        std::printf("%s %s: %s\n", out.pass ? "PASS" : "FAIL", e.name, out.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures,
                entries.size());
    return failures;
}
