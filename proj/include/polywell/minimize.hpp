#pragma once

#include <cstdint>
#include <vector>

#include "polywell/certify.hpp"
#include "polywell/fem.hpp"

namespace polywell {

struct SolveOptions {
    double grad_tol = 1e-9;      // scaled by (1 + interior node count)
    int max_iters = 100000;
    double armijo_c = 1e-4;
    double backtrack_ratio = 0.5;
    double initial_step = 1.0;
    bool record_history = false;

    void validate() const;
};

struct HistoryRow {
    int iter;
    double energy;    // I_C after the accepted step
    double grad_norm; // max-norm that triggered the step
    double step;      // accepted step length
};

struct SolveResult {
    VectorField y_star;
    double energy_total;  // I(y*), integrated directly from f
    double energy_convex; // I_C(y*)
    double energy_null;   // I_L(y*)
    int iterations;
    double final_grad_norm;
    bool converged;
    std::vector<HistoryRow> history;
};

/// Gradient descent with Armijo backtracking on I_C over the interior nodal
/// values; boundary nodes are pinned to y0 (eliminated, not penalized).
/// Interior values of y0 serve as the initial guess. Accepted steps never
/// increase I_C. Refuses a not-polyconvex well pair by throwing
/// NotPolyconvexError with the certificate (and its witness) attached;
/// hitting the iteration cap returns the best iterate with converged=false.
SolveResult minimize_dirichlet(const DoubleWell& dw, const Mesh2& mesh, const VectorField& y0,
                               const SolveOptions& opts = {});

struct UniquenessReport {
    double max_pairwise_dist; // max over solve pairs of |y*_i - y*_j|_inf
    std::vector<SolveResult> results;
};

/// Re-solves from `starts` seeded random interior initializations (boundary
/// fixed by y0) and reports how far apart the minimizers land. Strict
/// convexity of I_C says the true distance is zero; the reported number
/// reflects first-order solver conditioning only.
UniquenessReport uniqueness_probe(const DoubleWell& dw, const Mesh2& mesh, const VectorField& y0,
                                  const SolveOptions& opts, int starts, std::uint64_t seed);

struct EnergyReport {
    double total;     // I(y)
    double convex;    // I_C(y)
    double null_part; // I_L(y)
};

/// The three integrals I, I_C, I_L of a candidate field under a certified
/// polyconvex well pair.
EnergyReport energy_report(const DoubleWell& dw, const Mesh2& mesh, const VectorField& y);

} // namespace polywell
