#include "polywell/fem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace polywell {

namespace detail {

double pairwise_sum(std::vector<double>& terms) {
    if (terms.empty()) return 0.0;
    std::size_t count = terms.size();
    while (count > 1) {
        const std::size_t half = count / 2;
        for (std::size_t i = 0; i < half; ++i)
            terms[i] = terms[2 * i] + terms[2 * i + 1];
        if (count % 2 == 1) {
            terms[half] = terms[count - 1];
            count = half + 1;
        } else {
            count = half;
        }
    }
    return terms[0];
}

} // namespace detail

namespace {

double signed_area(const std::array<double, 2>& p0, const std::array<double, 2>& p1,
                   const std::array<double, 2>& p2) {
    return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
}

constexpr double kDegenerateArea = 1e-14;

} // namespace

bool Mesh2::is_boundary(int node) const {
    return std::binary_search(boundary_nodes.begin(), boundary_nodes.end(), node);
}

void Mesh2::validate() const {
    const int nv = static_cast<int>(nodes.size());
    for (const auto& tri : triangles) {
        for (int v : tri)
            if (v < 0 || v >= nv)
                throw MeshError("mesh: triangle references node " + std::to_string(v) +
                                " outside [0," + std::to_string(nv) + ")");
        const double area = signed_area(nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]);
        if (!(area > kDegenerateArea))
            throw MeshError("mesh: triangle (" + std::to_string(tri[0]) + "," +
                            std::to_string(tri[1]) + "," + std::to_string(tri[2]) +
                            ") has non-positive or degenerate area " + std::to_string(area));
    }

    // boundary edges are those owned by exactly one triangle
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& tri : triangles)
        for (int e = 0; e < 3; ++e) {
            int a = tri[e];
            int b = tri[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    std::set<int> expected;
    for (const auto& [edge, count] : edge_count) {
        if (count > 2)
            throw MeshError("mesh: edge (" + std::to_string(edge.first) + "," +
                            std::to_string(edge.second) + ") shared by " +
                            std::to_string(count) + " triangles");
        if (count == 1) {
            expected.insert(edge.first);
            expected.insert(edge.second);
        }
    }
    if (!std::is_sorted(boundary_nodes.begin(), boundary_nodes.end()))
        throw MeshError("mesh: boundary_nodes not sorted");
    if (std::set<int>(boundary_nodes.begin(), boundary_nodes.end()) != expected)
        throw MeshError("mesh: boundary_nodes disagree with the edge-count boundary");
}

Mesh2 unit_square_mesh(int m) {
    if (m < 1) throw MeshError("unit_square_mesh: subdivisions must be >= 1");
    Mesh2 mesh;
    const int side = m + 1;
    mesh.nodes.reserve(static_cast<std::size_t>(side) * side);
    for (int iy = 0; iy < side; ++iy)
        for (int ix = 0; ix < side; ++ix)
            mesh.nodes.push_back({static_cast<double>(ix) / m, static_cast<double>(iy) / m});

    mesh.triangles.reserve(static_cast<std::size_t>(2) * m * m);
    for (int cy = 0; cy < m; ++cy)
        for (int cx = 0; cx < m; ++cx) {
            const int sw = cy * side + cx;
            const int se = sw + 1;
            const int nw = sw + side;
            const int ne = nw + 1;
            // split along the SW-NE diagonal, both triangles counterclockwise
            mesh.triangles.push_back({sw, se, ne});
            mesh.triangles.push_back({sw, ne, nw});
        }

    for (int iy = 0; iy < side; ++iy)
        for (int ix = 0; ix < side; ++ix)
            if (ix == 0 || ix == m || iy == 0 || iy == m)
                mesh.boundary_nodes.push_back(iy * side + ix);

    mesh.validate();
    return mesh;
}

VectorField interpolate(const Mesh2& mesh,
                        const std::function<std::array<double, 2>(double, double)>& fn) {
    VectorField y;
    y.values.reserve(mesh.nodes.size());
    for (const auto& p : mesh.nodes) y.values.push_back(fn(p[0], p[1]));
    return y;
}

namespace {

void check_field(const Mesh2& mesh, const VectorField& y, const char* what) {
    if (y.values.size() != mesh.nodes.size())
        throw DimensionMismatch(std::string(what) + ": field has " +
                                std::to_string(y.values.size()) + " values for " +
                                std::to_string(mesh.nodes.size()) + " nodes");
}

Matrix triangle_gradient(const Mesh2& mesh, const VectorField& y,
                         const std::array<int, 3>& tri) {
    const auto& p0 = mesh.nodes[tri[0]];
    const auto& p1 = mesh.nodes[tri[1]];
    const auto& p2 = mesh.nodes[tri[2]];
    const double e1x = p1[0] - p0[0], e1y = p1[1] - p0[1];
    const double e2x = p2[0] - p0[0], e2y = p2[1] - p0[1];
    const double dete = e1x * e2y - e2x * e1y; // 2 * area
    if (!(0.5 * dete > kDegenerateArea))
        throw MeshError("gradients: degenerate triangle, area " + std::to_string(0.5 * dete));

    const auto& y0 = y.values[tri[0]];
    const auto& y1 = y.values[tri[1]];
    const auto& y2 = y.values[tri[2]];
    const double d1x = y1[0] - y0[0], d1y = y1[1] - y0[1];
    const double d2x = y2[0] - y0[0], d2y = y2[1] - y0[1];

    // G = [d1 d2] [e1 e2]^{-1}
    Matrix g(2);
    g(0, 0) = (d1x * e2y - d2x * e1y) / dete;
    g(0, 1) = (d2x * e1x - d1x * e2x) / dete;
    g(1, 0) = (d1y * e2y - d2y * e1y) / dete;
    g(1, 1) = (d2y * e1x - d1y * e2x) / dete;
    return g;
}

} // namespace

std::vector<Matrix> gradients(const Mesh2& mesh, const VectorField& y) {
    check_field(mesh, y, "gradients");
    std::vector<Matrix> out;
    out.reserve(mesh.triangles.size());
    for (const auto& tri : mesh.triangles) out.push_back(triangle_gradient(mesh, y, tri));
    return out;
}

double integrate(const Mesh2& mesh, const VectorField& y,
                 const std::function<double(const Matrix&)>& density) {
    check_field(mesh, y, "integrate");
    std::vector<double> terms;
    terms.reserve(mesh.triangles.size());
    for (const auto& tri : mesh.triangles) {
        const double area = signed_area(mesh.nodes[tri[0]], mesh.nodes[tri[1]],
                                        mesh.nodes[tri[2]]);
        terms.push_back(area * density(triangle_gradient(mesh, y, tri)));
    }
    return detail::pairwise_sum(terms);
}

double null_lagrangian_gap(const Mesh2& mesh, const VectorField& y1, const VectorField& y2,
                           const Decomposition& dec) {
    check_field(mesh, y1, "null_lagrangian_gap");
    check_field(mesh, y2, "null_lagrangian_gap");
    for (int v : mesh.boundary_nodes)
        if (y1.values[v] != y2.values[v])
            throw BoundaryMismatch("null_lagrangian_gap: fields differ at boundary node " +
                                   std::to_string(v));
    const auto null_density = [&dec](const Matrix& g) { return eval_null(dec, g); };
    return std::abs(integrate(mesh, y1, null_density) - integrate(mesh, y2, null_density));
}

} // namespace polywell
