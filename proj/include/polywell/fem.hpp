#pragma once

#include <array>
#include <functional>
#include <vector>

#include "polywell/decompose.hpp"
#include "polywell/matrix.hpp"

namespace polywell {

/// 2D triangulation of a polygonal domain. Triangles are counterclockwise
/// index triples; boundary_nodes is the sorted set of nodes lying on edges
/// that belong to exactly one triangle.
struct Mesh2 {
    std::vector<std::array<double, 2>> nodes;
    std::vector<std::array<int, 3>> triangles;
    std::vector<int> boundary_nodes;

    std::size_t node_count() const { return nodes.size(); }
    bool is_boundary(int node) const;

    // positive areas, index ranges, boundary set consistent with edge counts
    void validate() const;
};

/// Nodal values of a P1 vector field y : Omega -> R^2.
struct VectorField {
    std::vector<std::array<double, 2>> values;
};

/// Uniform triangulation of the unit square: (m+1)^2 nodes, each grid cell
/// split along its SW-NE diagonal into 2 m^2 triangles.
Mesh2 unit_square_mesh(int m);

VectorField interpolate(const Mesh2& mesh,
                        const std::function<std::array<double, 2>(double, double)>& fn);

/// Per-triangle constant deformation gradient of the P1 interpolant.
std::vector<Matrix> gradients(const Mesh2& mesh, const VectorField& y);

/// One-point quadrature sum area(T) * density(G_T); exact for P1 fields
/// because the density only sees the constant per-triangle gradient.
/// Per-triangle terms are combined by a fixed pairwise reduction so the
/// result is bit-stable regardless of how the loop is scheduled.
double integrate(const Mesh2& mesh, const VectorField& y,
                 const std::function<double(const Matrix&)>& density);

/// |I_L(y1) - I_L(y2)| for two fields with bitwise-equal boundary values.
/// Zero in exact arithmetic: s2 of an affinely transformed P1 gradient is a
/// 2x2 Jacobian determinant up to terms linear in the gradient, and both
/// integrate to boundary-only quantities.
double null_lagrangian_gap(const Mesh2& mesh, const VectorField& y1, const VectorField& y2,
                           const Decomposition& dec);

namespace detail {
// fixed-shape tree reduction over an indexed vector of terms
double pairwise_sum(std::vector<double>& terms);
} // namespace detail

} // namespace polywell
