#include "polywell/minimize.hpp"

#include <algorithm>
#include <cmath>

#include "polywell/rng.hpp"

namespace polywell {

void SolveOptions::validate() const {
    if (grad_tol <= 0.0 || max_iters <= 0 || initial_step <= 0.0)
        throw ValidationError("SolveOptions: grad_tol, max_iters, initial_step must be positive");
    if (armijo_c <= 0.0 || armijo_c >= 1.0)
        throw ValidationError("SolveOptions: armijo_c must lie in (0,1)");
    if (backtrack_ratio <= 0.0 || backtrack_ratio >= 1.0)
        throw ValidationError("SolveOptions: backtrack_ratio must lie in (0,1)");
}

namespace {

struct InteriorGradient {
    std::vector<std::array<double, 2>> g; // full size, zero at boundary nodes
    double max_norm;
};

// d/dy_v of sum_T area(T) f_C(G_T): per triangle W = area * grad_fC(G) E^{-T},
// local nodes 1,2 receive the columns of W and node 0 their negated sum.
InteriorGradient convex_energy_gradient(const Mesh2& mesh, const Decomposition& dec,
                                        const VectorField& y) {
    InteriorGradient out{std::vector<std::array<double, 2>>(mesh.nodes.size(), {0.0, 0.0}), 0.0};
    const auto grads = gradients(mesh, y);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tri = mesh.triangles[t];
        const auto& p0 = mesh.nodes[tri[0]];
        const auto& p1 = mesh.nodes[tri[1]];
        const auto& p2 = mesh.nodes[tri[2]];
        const double e1x = p1[0] - p0[0], e1y = p1[1] - p0[1];
        const double e2x = p2[0] - p0[0], e2y = p2[1] - p0[1];
        const double dete = e1x * e2y - e2x * e1y;
        const double area = 0.5 * dete;

        const Matrix p = convex_gradient(dec, grads[t]);
        // W = area * P * E^{-T}; E^{-T} = [[e2y, -e1y], [-e2x, e1x]] / det
        const double f = area / dete;
        const double w00 = f * (p(0, 0) * e2y + p(0, 1) * (-e2x));
        const double w01 = f * (p(0, 0) * (-e1y) + p(0, 1) * e1x);
        const double w10 = f * (p(1, 0) * e2y + p(1, 1) * (-e2x));
        const double w11 = f * (p(1, 0) * (-e1y) + p(1, 1) * e1x);

        out.g[tri[1]][0] += w00;
        out.g[tri[1]][1] += w10;
        out.g[tri[2]][0] += w01;
        out.g[tri[2]][1] += w11;
        out.g[tri[0]][0] -= w00 + w01;
        out.g[tri[0]][1] -= w10 + w11;
    }
    for (int v : mesh.boundary_nodes) out.g[v] = {0.0, 0.0};
    for (const auto& gv : out.g)
        out.max_norm = std::max({out.max_norm, std::abs(gv[0]), std::abs(gv[1])});
    return out;
}

} // namespace

SolveResult minimize_dirichlet(const DoubleWell& dw, const Mesh2& mesh, const VectorField& y0,
                               const SolveOptions& opts) {
    opts.validate();
    if (dw.n != 2) throw DimensionMismatch("minimize_dirichlet: the solver is 2D, wells must be 2x2");
    if (y0.values.size() != mesh.nodes.size())
        throw DimensionMismatch("minimize_dirichlet: y0 length does not match the mesh");

    Certificate cert = certify(dw);
    if (!cert.polyconvex())
        throw NotPolyconvexError("minimize_dirichlet: wells are not polyconvex, the convex "
                                 "reformulation does not apply",
                                 cert);
    const Decomposition dec = build(cert);

    std::size_t interior = 0;
    for (std::size_t v = 0; v < mesh.nodes.size(); ++v)
        if (!mesh.is_boundary(static_cast<int>(v))) ++interior;
    const double stop_tol = opts.grad_tol * (1.0 + static_cast<double>(interior));

    const auto convex_density = [&dec](const Matrix& g) { return eval_convex(dec, g); };

    VectorField y = y0;
    double energy = integrate(mesh, y, convex_density);

    SolveResult res{y, 0.0, 0.0, 0.0, 0, 0.0, false, {}};
    double last_step = opts.initial_step;

    int iter = 0;
    InteriorGradient grad = convex_energy_gradient(mesh, dec, y);
    for (; iter < opts.max_iters; ++iter) {
        res.final_grad_norm = grad.max_norm;
        if (grad.max_norm <= stop_tol) {
            res.converged = true;
            break;
        }

        double gg = 0.0;
        for (const auto& gv : grad.g) gg += gv[0] * gv[0] + gv[1] * gv[1];
        const double pre_step_norm = grad.max_norm;

        // warm-started backtracking: retry a notch above the last accepted step
        double step = std::min(opts.initial_step, last_step / opts.backtrack_ratio);
        bool accepted = false;
        bool grad_refreshed = false;
        VectorField trial = y;
        while (step > 1e-18) {
            for (std::size_t v = 0; v < y.values.size(); ++v) {
                trial.values[v][0] = y.values[v][0] - step * grad.g[v][0];
                trial.values[v][1] = y.values[v][1] - step * grad.g[v][1];
            }
            const double trial_energy = integrate(mesh, trial, convex_density);
            const double target = energy - opts.armijo_c * step * gg;
            if (target < energy) {
                if (trial_energy <= target) {
                    y = trial;
                    energy = trial_energy;
                    last_step = step;
                    accepted = true;
                    break;
                }
            } else if (trial_energy <= energy) {
                // the Armijo decrement rounds away against the energy, so the
                // energy can no longer arbitrate; insist on strict descent of
                // the squared gradient norm, which stays resolvable near the
                // minimum and rules out plateau limit cycles
                InteriorGradient tg = convex_energy_gradient(mesh, dec, trial);
                double tgg = 0.0;
                for (const auto& gv : tg.g) tgg += gv[0] * gv[0] + gv[1] * gv[1];
                if (tgg < gg) {
                    y = trial;
                    energy = trial_energy;
                    last_step = step;
                    accepted = true;
                    grad = std::move(tg);
                    grad_refreshed = true;
                    break;
                }
            }
            step *= opts.backtrack_ratio;
        }
        if (!accepted) break; // progress below floating-point resolution

        if (opts.record_history)
            res.history.push_back({iter + 1, energy, pre_step_norm, step});
        if (!grad_refreshed) grad = convex_energy_gradient(mesh, dec, y);
    }
    res.final_grad_norm = grad.max_norm;

    res.iterations = iter;
    res.y_star = y;
    res.energy_convex = integrate(mesh, y, convex_density);
    res.energy_null = integrate(mesh, y, [&dec](const Matrix& g) { return eval_null(dec, g); });
    res.energy_total = integrate(mesh, y, [&dw](const Matrix& g) { return eval(dw, g); });
    return res;
}

UniquenessReport uniqueness_probe(const DoubleWell& dw, const Mesh2& mesh, const VectorField& y0,
                                  const SolveOptions& opts, int starts, std::uint64_t seed) {
    if (starts < 2) throw ValidationError("uniqueness_probe: starts must be >= 2");
    UniquenessReport report{0.0, {}};
    report.results.reserve(starts);
    for (int s = 0; s < starts; ++s) {
        Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(s));
        VectorField init = y0;
        for (std::size_t v = 0; v < init.values.size(); ++v) {
            if (mesh.is_boundary(static_cast<int>(v))) continue;
            init.values[v][0] += rng.uniform(-0.5, 0.5);
            init.values[v][1] += rng.uniform(-0.5, 0.5);
        }
        report.results.push_back(minimize_dirichlet(dw, mesh, init, opts));
    }
    for (std::size_t i = 0; i + 1 < report.results.size(); ++i)
        for (std::size_t j = i + 1; j < report.results.size(); ++j) {
            const auto& yi = report.results[i].y_star.values;
            const auto& yj = report.results[j].y_star.values;
            for (std::size_t v = 0; v < yi.size(); ++v) {
                report.max_pairwise_dist = std::max(
                    {report.max_pairwise_dist, std::abs(yi[v][0] - yj[v][0]),
                     std::abs(yi[v][1] - yj[v][1])});
            }
        }
    return report;
}

EnergyReport energy_report(const DoubleWell& dw, const Mesh2& mesh, const VectorField& y) {
    Certificate cert = certify(dw);
    if (!cert.polyconvex())
        throw NotPolyconvexError("energy_report: wells are not polyconvex", cert);
    const Decomposition dec = build(cert);
    EnergyReport rep{};
    rep.total = integrate(mesh, y, [&dw](const Matrix& g) { return eval(dw, g); });
    rep.convex = integrate(mesh, y, [&dec](const Matrix& g) { return eval_convex(dec, g); });
    rep.null_part = integrate(mesh, y, [&dec](const Matrix& g) { return eval_null(dec, g); });
    return rep;
}

} // namespace polywell
