#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "polywell/fd.hpp"
#include "polywell/json_io.hpp"
#include "polywell/rng.hpp"

namespace {

using polywell::io::json;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << '\n';
    else
        polywell::io::write_json_file(out_path, j);
}

std::string field_csv_path(const std::string& out_path) {
    if (out_path.empty()) return "field.csv";
    std::string base = out_path;
    if (base.size() > 5 && base.substr(base.size() - 5) == ".json")
        base.resize(base.size() - 5);
    return base + ".field.csv";
}

polywell::DoubleWell load_wells(const std::string& path) {
    return polywell::io::wells_from_json(polywell::io::load_json_file(path));
}

// Accepts either a bare Matrix or {"M": <Matrix>, "c": [c1, c2]}.
struct AffineData {
    polywell::Matrix m;
    std::array<double, 2> c{0.0, 0.0};
};

AffineData parse_affine(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw polywell::ParseError(std::string("--boundary-affine: ") + e.what());
    }
    AffineData out{polywell::Matrix(2), {0.0, 0.0}};
    if (j.is_object() && j.contains("M")) {
        out.m = polywell::io::matrix_from_json(j["M"], "--boundary-affine field \"M\"");
        if (j.contains("c")) {
            const auto& c = j["c"];
            if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
                throw polywell::ParseError(
                    "--boundary-affine: field \"c\" must be [c1, c2]");
            out.c = {c[0].get<double>(), c[1].get<double>()};
        }
    } else {
        out.m = polywell::io::matrix_from_json(j, "--boundary-affine");
    }
    if (out.m.dim() != 2)
        throw polywell::ParseError("--boundary-affine: field \"M\" must be 2x2");
    return out;
}

polywell::VectorField boundary_field(const polywell::Mesh2& mesh, const std::string& affine,
                                     const std::string& csv) {
    if (!csv.empty()) return polywell::io::read_field_csv(csv, mesh);
    const AffineData aff = parse_affine(affine);
    return polywell::interpolate(mesh, [&aff](double x, double y) {
        return std::array<double, 2>{aff.m(0, 0) * x + aff.m(0, 1) * y + aff.c[0],
                                     aff.m(1, 0) * x + aff.m(1, 1) * y + aff.c[1]};
    });
}

json solve_scalars(const polywell::SolveResult& res) {
    json j;
    j["converged"] = res.converged;
    j["iterations"] = res.iterations;
    j["final_grad_norm"] = res.final_grad_norm;
    j["energy_total"] = res.energy_total;
    j["energy_convex"] = res.energy_convex;
    j["energy_null"] = res.energy_null;
    return j;
}

int run_certify(const std::string& wells_path, const std::string& out_path, double tol) {
    const polywell::DoubleWell dw = load_wells(wells_path);
    const polywell::Certificate cert = polywell::certify(dw, {tol});
    emit(polywell::io::to_json(cert), out_path);
    return cert.polyconvex() ? 0 : 2;
}

int run_decompose_check(const std::string& wells_path, const std::string& out_path, double tol,
                        std::uint64_t seed) {
    const polywell::DoubleWell dw = load_wells(wells_path);
    const polywell::Certificate cert = polywell::certify(dw, {tol});
    if (!cert.polyconvex()) {
        emit(polywell::io::to_json(cert), out_path);
        return 2;
    }
    const polywell::Decomposition dec = polywell::build(cert);

    const int n = dw.n;
    const double spread = 2.0 * (1.0 + cert.a);
    const auto draw = [&](polywell::Rng& rng) {
        polywell::Matrix x = *cert.B;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) x(i, j) += rng.uniform(-spread, spread);
        return x;
    };

    const std::uint64_t nsamp = 1000;
    double split_residual = 0.0, midpoint_violation = 0.0;
    for (std::uint64_t k = 0; k < nsamp; ++k) {
        polywell::Rng rng = polywell::Rng::derived(seed, k);
        const polywell::Matrix x = draw(rng);
        const polywell::Matrix xp = draw(rng);
        const double f = polywell::eval(dw, x);
        const double split = polywell::eval_convex(dec, x) + polywell::eval_null(dec, x);
        split_residual = std::max(split_residual, std::abs(split - f) / (1.0 + std::abs(f)));

        const double ca = polywell::eval_convex(dec, x);
        const double cb = polywell::eval_convex(dec, xp);
        const double cm = polywell::eval_convex(dec, 0.5 * (x + xp));
        const double scale = 1.0 + std::max(std::abs(ca), std::abs(cb));
        midpoint_violation =
            std::max(midpoint_violation, (cm - 0.5 * ca - 0.5 * cb) / scale);
    }
    midpoint_violation = std::max(midpoint_violation, 0.0);
    const bool pass = split_residual <= 1e-10 && midpoint_violation <= 1e-12;

    json j = polywell::io::to_json(dec, cert);
    json checks;
    checks["split_residual"] = split_residual;
    checks["split_samples"] = nsamp;
    checks["midpoint_violation"] = midpoint_violation;
    checks["midpoint_samples"] = nsamp;
    checks["pass"] = pass;
    j["checks"] = std::move(checks);
    emit(j, out_path);
    return pass ? 0 : 1;
}

int run_hessian_check(const std::string& wells_path, const std::string& out_path,
                      std::uint64_t samples, std::uint64_t seed) {
    const polywell::DoubleWell dw = load_wells(wells_path);
    const polywell::RankOneSampleReport rep = polywell::sample_rank_one(dw, samples, seed);

    const auto phi = [&](double t) {
        return polywell::eval_g(
            dw, rep.argmin_z + t * polywell::outer(rep.argmin_dir.u, rep.argmin_dir.v));
    };
    const double fd = polywell::fd_second_difference(phi, polywell::fd_second_step(rep.argmin_z));

    const double scale =
        1.0 + 4.0 * (rep.max_z_norm * rep.max_z_norm + polywell::frobenius_norm_sq(dw.delta));
    const double threshold = -1e-9 * scale;
    const bool ok = rep.min_value >= threshold;

    json j;
    j["samples"] = rep.samples;
    j["min_value"] = rep.min_value;
    j["argmin_index"] = rep.argmin_index;
    j["max_z_norm"] = rep.max_z_norm;
    j["argmin_z"] = polywell::io::to_json(rep.argmin_z);
    j["u"] = rep.argmin_dir.u;
    j["v"] = rep.argmin_dir.v;
    j["fd_value"] = fd;
    j["fd_gap"] = std::abs(fd - rep.min_value);
    j["threshold"] = threshold;
    j["rank_one_convex"] = ok;
    emit(j, out_path);
    return ok ? 0 : 2;
}

int run_identities(const std::string& out_path, std::uint64_t seed) {
    const auto results = polywell::run_identity_suite(seed);
    emit(polywell::io::to_json(results, seed), out_path);
    return polywell::all_pass(results) ? 0 : 1;
}

int run_minimize(const std::string& wells_path, const std::string& out_path, double tol,
                 int mesh_m, const std::string& affine, const std::string& csv,
                 const std::string& history_path, double grad_tol, int max_iters) {
    const polywell::DoubleWell dw = load_wells(wells_path);
    const polywell::Certificate cert = polywell::certify(dw, {tol});
    if (!cert.polyconvex()) {
        emit(polywell::io::to_json(cert), out_path);
        return 2;
    }
    if (affine.empty() && csv.empty())
        throw polywell::ParseError("minimize: provide --boundary-affine or --boundary-csv");

    const polywell::Mesh2 mesh = polywell::unit_square_mesh(mesh_m);
    const polywell::VectorField y0 = boundary_field(mesh, affine, csv);

    polywell::SolveOptions opts;
    opts.grad_tol = grad_tol;
    opts.max_iters = max_iters;
    opts.record_history = !history_path.empty();
    const polywell::SolveResult res = polywell::minimize_dirichlet(dw, mesh, y0, opts);

    const std::string csv_path = field_csv_path(out_path);
    polywell::io::write_field_csv(csv_path, mesh, res.y_star);
    if (!history_path.empty()) polywell::io::write_history_csv(history_path, res.history);

    json j;
    j["verdict"] = "polyconvex";
    j["mesh_m"] = mesh_m;
    json scalars = solve_scalars(res);
    for (auto& [key, value] : scalars.items()) j[key] = value;
    j["a"] = cert.a;
    j["field_csv"] = csv_path;
    if (!history_path.empty()) j["history_csv"] = history_path;
    emit(j, out_path);
    return res.converged ? 0 : 3;
}

int run_probe(const std::string& wells_path, const std::string& out_path, double tol, int mesh_m,
              const std::string& affine, const std::string& csv, int starts, std::uint64_t seed,
              double grad_tol, int max_iters) {
    const polywell::DoubleWell dw = load_wells(wells_path);
    const polywell::Certificate cert = polywell::certify(dw, {tol});
    if (!cert.polyconvex()) {
        emit(polywell::io::to_json(cert), out_path);
        return 2;
    }
    if (affine.empty() && csv.empty())
        throw polywell::ParseError("probe-uniqueness: provide --boundary-affine or --boundary-csv");

    const polywell::Mesh2 mesh = polywell::unit_square_mesh(mesh_m);
    const polywell::VectorField y0 = boundary_field(mesh, affine, csv);

    polywell::SolveOptions opts;
    opts.grad_tol = grad_tol;
    opts.max_iters = max_iters;
    const polywell::UniquenessReport rep =
        polywell::uniqueness_probe(dw, mesh, y0, opts, starts, seed);

    bool all_converged = true;
    json results = json::array();
    for (const auto& r : rep.results) {
        all_converged = all_converged && r.converged;
        results.push_back(solve_scalars(r));
    }

    json j;
    j["verdict"] = "polyconvex";
    j["mesh_m"] = mesh_m;
    j["starts"] = starts;
    j["max_pairwise_dist"] = rep.max_pairwise_dist;
    j["results"] = std::move(results);
    emit(j, out_path);
    return all_converged ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polyconvexity certification, explicit convex/null-Lagrangian decomposition, "
                 "and Dirichlet energy minimization for double-well matrix energies "
                 "f(X) = |X - X1|^2 |X - X2|^2"};
    app.require_subcommand(1);

    std::string wells_path, out_path, affine, boundary_csv, history_path;
    std::uint64_t seed = 0, samples = 10000;
    double tol = 1e-8, grad_tol = 1e-9, probe_grad_tol = 1e-10;
    int mesh_m = 8, probe_mesh_m = 4, starts = 5, max_iters = 100000;

    auto* certify = app.add_subcommand("certify", "Decide polyconvexity of a well pair");
    certify->add_option("--wells", wells_path, "DoubleWell JSON path")->required();
    certify->add_option("--out", out_path, "Certificate JSON path (stdout if omitted)");
    certify->add_option("--tol", tol, "Singular-value equality tolerance");

    auto* decomp = app.add_subcommand("decompose-check",
                                      "Build the decomposition and verify the split");
    decomp->add_option("--wells", wells_path, "DoubleWell JSON path")->required();
    decomp->add_option("--out", out_path, "Report JSON path (stdout if omitted)");
    decomp->add_option("--tol", tol, "Singular-value equality tolerance");
    decomp->add_option("--seed", seed, "Sampling seed");

    auto* hess = app.add_subcommand("hessian-check",
                                    "Sample the rank-one second derivative for violations");
    hess->add_option("--wells", wells_path, "DoubleWell JSON path")->required();
    hess->add_option("--out", out_path, "Report JSON path (stdout if omitted)");
    hess->add_option("--seed", seed, "Sampling seed");
    hess->add_option("--samples", samples, "Sample count");

    auto* ident = app.add_subcommand("identities", "Run the algebraic identity suite");
    ident->add_option("--out", out_path, "Report JSON path (stdout if omitted)");
    ident->add_option("--seed", seed, "Sampling seed");

    auto* minimize = app.add_subcommand("minimize",
                                        "Solve the Dirichlet minimization on the unit square");
    minimize->add_option("--wells", wells_path, "DoubleWell JSON path")->required();
    minimize->add_option("--out", out_path, "SolveResult JSON path (stdout if omitted)");
    minimize->add_option("--tol", tol, "Singular-value equality tolerance");
    minimize->add_option("--mesh-m", mesh_m, "Unit-square subdivisions per side");
    minimize->add_option("--boundary-affine", affine,
                         "Affine boundary data as JSON: a 2x2 Matrix or {\"M\":..., \"c\":[...]}");
    minimize->add_option("--boundary-csv", boundary_csv, "Nodal boundary/initial field CSV");
    minimize->add_option("--history", history_path, "Write convergence history CSV here");
    minimize->add_option("--grad-tol", grad_tol, "Stopping tolerance on the interior gradient");
    minimize->add_option("--max-iters", max_iters, "Iteration cap");

    auto* probe = app.add_subcommand("probe-uniqueness",
                                     "Re-solve from random starts and compare minimizers");
    probe->add_option("--wells", wells_path, "DoubleWell JSON path")->required();
    probe->add_option("--out", out_path, "Report JSON path (stdout if omitted)");
    probe->add_option("--tol", tol, "Singular-value equality tolerance");
    probe->add_option("--mesh-m", probe_mesh_m, "Unit-square subdivisions per side");
    probe->add_option("--boundary-affine", affine,
                      "Affine boundary data as JSON: a 2x2 Matrix or {\"M\":..., \"c\":[...]}");
    probe->add_option("--boundary-csv", boundary_csv, "Nodal boundary/initial field CSV");
    probe->add_option("--starts", starts, "Number of random starts");
    probe->add_option("--seed", seed, "Start-perturbation seed");
    probe->add_option("--grad-tol", probe_grad_tol, "Stopping tolerance on the interior gradient");
    probe->add_option("--max-iters", max_iters, "Iteration cap");

    try {
        app.parse(argc, argv);
        if (certify->parsed()) return run_certify(wells_path, out_path, tol);
        if (decomp->parsed()) return run_decompose_check(wells_path, out_path, tol, seed);
        if (hess->parsed()) return run_hessian_check(wells_path, out_path, samples, seed);
        if (ident->parsed()) return run_identities(out_path, seed);
        if (minimize->parsed())
            return run_minimize(wells_path, out_path, tol, mesh_m, affine, boundary_csv,
                                history_path, grad_tol, max_iters);
        if (probe->parsed())
            return run_probe(wells_path, out_path, tol, probe_mesh_m, affine, boundary_csv,
                             starts, seed, probe_grad_tol, max_iters);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const polywell::NotPolyconvexError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
