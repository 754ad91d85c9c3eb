#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polywell/fd.hpp"
#include "polywell/json_io.hpp"

namespace py = pybind11;
using namespace polywell;

namespace {

using Rows = std::vector<std::vector<double>>;

Matrix mat(const Rows& rows) { return Matrix::from_rows(rows); }

DoubleWell wells(const Rows& x1, const Rows& x2) { return DoubleWell(mat(x1), mat(x2)); }

// Python-side structures mirror the CLI wire formats exactly.
py::object to_py(const nlohmann::ordered_json& j) {
    using value_t = nlohmann::ordered_json::value_t;
    switch (j.type()) {
        case value_t::object: {
            py::dict d;
            for (const auto& [key, value] : j.items()) d[py::str(key)] = to_py(value);
            return d;
        }
        case value_t::array: {
            py::list l;
            for (const auto& e : j) l.append(to_py(e));
            return l;
        }
        case value_t::string: return py::str(j.get<std::string>());
        case value_t::boolean: return py::bool_(j.get<bool>());
        case value_t::number_integer: return py::int_(j.get<long long>());
        case value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case value_t::number_float: return py::float_(j.get<double>());
        default: return py::none();
    }
}

py::object solve_to_py(const Mesh2& mesh, const SolveResult& res) {
    io::json j;
    j["converged"] = res.converged;
    j["iterations"] = res.iterations;
    j["final_grad_norm"] = res.final_grad_norm;
    j["energy_total"] = res.energy_total;
    j["energy_convex"] = res.energy_convex;
    j["energy_null"] = res.energy_null;
    j["nodes"] = mesh.nodes;
    j["field"] = res.y_star.values;
    return to_py(j);
}

VectorField affine_field(const Mesh2& mesh, const Rows& m_rows, const std::array<double, 2>& c) {
    const Matrix m = mat(m_rows);
    if (m.dim() != 2) throw DimensionMismatch("boundary matrix must be 2x2");
    return interpolate(mesh, [&](double x, double y) {
        return std::array<double, 2>{m(0, 0) * x + m(0, 1) * y + c[0],
                                     m(1, 0) * x + m(1, 1) * y + c[1]};
    });
}

} // namespace

PYBIND11_MODULE(polywell, mod) {
    mod.doc() = "Polyconvexity certification, convex/null-Lagrangian decomposition, and "
                "Dirichlet minimization for double-well matrix energies";

    py::register_exception<NotPolyconvexError>(mod, "NotPolyconvexError");

    mod.def(
        "eval_energy",
        [](const Rows& x1, const Rows& x2, const Rows& x) {
            return eval(wells(x1, x2), mat(x));
        },
        py::arg("X1"), py::arg("X2"), py::arg("X"),
        "f(X) = |X - X1|^2 |X - X2|^2");

    mod.def(
        "gradient",
        [](const Rows& x1, const Rows& x2, const Rows& x) {
            return gradient(wells(x1, x2), mat(x)).rows();
        },
        py::arg("X1"), py::arg("X2"), py::arg("X"), "Analytic gradient of the energy");

    mod.def(
        "hessian_rank_one",
        [](const Rows& x1, const Rows& x2, const Rows& z, const std::vector<double>& u,
           const std::vector<double>& v) {
            return hessian_rank_one(wells(x1, x2), mat(z), {u, v});
        },
        py::arg("X1"), py::arg("X2"), py::arg("Z"), py::arg("u"), py::arg("v"),
        "Second derivative of the centered energy along the rank-one direction u v^T");

    mod.def(
        "certify",
        [](const Rows& x1, const Rows& x2, double tol) {
            return to_py(io::to_json(certify(wells(x1, x2), {tol})));
        },
        py::arg("X1"), py::arg("X2"), py::arg("tol") = 1e-8,
        "Polyconvexity certificate as a dict (same shape as the CLI JSON)");

    mod.def(
        "decompose",
        [](const Rows& x1, const Rows& x2, double tol) {
            const Certificate cert = certify(wells(x1, x2), {tol});
            return to_py(io::to_json(build(cert), cert));
        },
        py::arg("X1"), py::arg("X2"), py::arg("tol") = 1e-8,
        "Decomposition parameters (a, Q, B, null_coeff); raises NotPolyconvexError otherwise");

    mod.def(
        "eval_convex",
        [](const Rows& x1, const Rows& x2, const Rows& x, double tol) {
            const Certificate cert = certify(wells(x1, x2), {tol});
            return eval_convex(build(cert), mat(x));
        },
        py::arg("X1"), py::arg("X2"), py::arg("X"), py::arg("tol") = 1e-8,
        "Convex part f_C(X)");

    mod.def(
        "eval_null",
        [](const Rows& x1, const Rows& x2, const Rows& x, double tol) {
            const Certificate cert = certify(wells(x1, x2), {tol});
            return eval_null(build(cert), mat(x));
        },
        py::arg("X1"), py::arg("X2"), py::arg("X"), py::arg("tol") = 1e-8,
        "Null-Lagrangian part f_L(X)");

    mod.def(
        "sample_rank_one",
        [](const Rows& x1, const Rows& x2, std::uint64_t samples, std::uint64_t seed) {
            const RankOneSampleReport rep = sample_rank_one(wells(x1, x2), samples, seed);
            io::json j;
            j["samples"] = rep.samples;
            j["min_value"] = rep.min_value;
            j["argmin_index"] = rep.argmin_index;
            j["max_z_norm"] = rep.max_z_norm;
            j["argmin_z"] = rep.argmin_z.rows();
            j["u"] = rep.argmin_dir.u;
            j["v"] = rep.argmin_dir.v;
            return to_py(j);
        },
        py::arg("X1"), py::arg("X2"), py::arg("samples") = 10000, py::arg("seed") = 0,
        "Seeded sweep of the rank-one second derivative; returns the minimum found");

    mod.def(
        "run_identity_suite",
        [](std::uint64_t seed) { return to_py(io::to_json(run_identity_suite(seed), seed)); },
        py::arg("seed") = 0, "Random verification of the algebraic identities");

    mod.def(
        "unit_square_mesh",
        [](int m) { return to_py(io::to_json(unit_square_mesh(m))); }, py::arg("m"),
        "Uniform unit-square triangulation as a dict");

    mod.def(
        "minimize",
        [](const Rows& x1, const Rows& x2, int m, const Rows& boundary_m,
           const std::array<double, 2>& boundary_c, double grad_tol, int max_iters) {
            const DoubleWell dw = wells(x1, x2);
            const Mesh2 mesh = unit_square_mesh(m);
            const VectorField y0 = affine_field(mesh, boundary_m, boundary_c);
            SolveOptions opts;
            opts.grad_tol = grad_tol;
            opts.max_iters = max_iters;
            return solve_to_py(mesh, minimize_dirichlet(dw, mesh, y0, opts));
        },
        py::arg("X1"), py::arg("X2"), py::arg("m") = 8,
        py::arg("boundary_M") = Rows{{1.0, 0.0}, {0.0, 1.0}},
        py::arg("boundary_c") = std::array<double, 2>{0.0, 0.0}, py::arg("grad_tol") = 1e-9,
        py::arg("max_iters") = 100000,
        "Dirichlet minimization on the unit square with affine boundary data");

    mod.def(
        "uniqueness_probe",
        [](const Rows& x1, const Rows& x2, int m, const Rows& boundary_m,
           const std::array<double, 2>& boundary_c, int starts, std::uint64_t seed,
           double grad_tol, int max_iters) {
            const DoubleWell dw = wells(x1, x2);
            const Mesh2 mesh = unit_square_mesh(m);
            const VectorField y0 = affine_field(mesh, boundary_m, boundary_c);
            SolveOptions opts;
            opts.grad_tol = grad_tol;
            opts.max_iters = max_iters;
            const UniquenessReport rep = uniqueness_probe(dw, mesh, y0, opts, starts, seed);
            py::dict d;
            d["max_pairwise_dist"] = rep.max_pairwise_dist;
            py::list results;
            for (const auto& r : rep.results) results.append(solve_to_py(mesh, r));
            d["results"] = results;
            return d;
        },
        py::arg("X1"), py::arg("X2"), py::arg("m") = 4,
        py::arg("boundary_M") = Rows{{1.0, 0.0}, {0.0, 1.0}},
        py::arg("boundary_c") = std::array<double, 2>{0.0, 0.0}, py::arg("starts") = 5,
        py::arg("seed") = 0, py::arg("grad_tol") = 1e-10, py::arg("max_iters") = 100000,
        "Minimize from several random starts and report the worst pairwise distance");
}
