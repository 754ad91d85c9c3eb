#include "polywell/energy.hpp"

#include <cmath>
#include <utility>

namespace polywell {

DoubleWell::DoubleWell(Matrix X1, Matrix X2)
    : x1(std::move(X1)),
      x2(std::move(X2)),
      delta(x1.dim()),
      mid(x1.dim()),
      n(x1.dim()) {
    check_same_dim(x1, x2, "DoubleWell");
    delta = (x1 - x2) * 0.5;
    mid = (x1 + x2) * 0.5;
}

double eval(const DoubleWell& dw, const Matrix& x) {
    check_same_dim(dw.x1, x, "eval");
    return frobenius_norm_sq(x - dw.x1) * frobenius_norm_sq(x - dw.x2);
}

double eval_g(const DoubleWell& dw, const Matrix& z) {
    check_same_dim(dw.x1, z, "eval_g");
    const double zz = frobenius_norm_sq(z);
    const double aa = frobenius_norm_sq(dw.delta);
    const double za = frobenius_inner(z, dw.delta);
    return zz * zz + 2.0 * aa * zz + aa * aa - 4.0 * za * za;
}

Matrix gradient(const DoubleWell& dw, const Matrix& x) {
    check_same_dim(dw.x1, x, "gradient");
    const Matrix d1 = x - dw.x1;
    const Matrix d2 = x - dw.x2;
    return 2.0 * frobenius_norm_sq(d2) * d1 + 2.0 * frobenius_norm_sq(d1) * d2;
}

double hessian_rank_one(const DoubleWell& dw, const Matrix& z, const RankOneDirection& d) {
    check_same_dim(dw.x1, z, "hessian_rank_one");
    if (static_cast<int>(d.u.size()) != dw.n || static_cast<int>(d.v.size()) != dw.n)
        throw DimensionMismatch("hessian_rank_one: direction length mismatch");
    // <Z, u v^T> = u^T Z v
    double z_uv = 0.0;
    double a_uv = 0.0;
    for (int i = 0; i < dw.n; ++i)
        for (int j = 0; j < dw.n; ++j) {
            z_uv += d.u[i] * z(i, j) * d.v[j];
            a_uv += d.u[i] * dw.delta(i, j) * d.v[j];
        }
    const double uu = norm_sq(d.u);
    const double vv = norm_sq(d.v);
    const double zz = frobenius_norm_sq(z);
    const double aa = frobenius_norm_sq(dw.delta);
    return 8.0 * z_uv * z_uv + 4.0 * (zz + aa) * uu * vv - 8.0 * a_uv * a_uv;
}

double g2_frame(const Matrix& x) {
    if (x.dim() != 2) throw DimensionMismatch("g2_frame: requires a 2x2 matrix");
    const double xx = frobenius_norm_sq(x);
    return xx * xx + 4.0 - 8.0 * det(x);
}

double g3_origin(const Matrix& x) {
    if (x.dim() != 3) throw DimensionMismatch("g3_origin: requires a 3x3 matrix");
    const double xx = frobenius_norm_sq(x);
    return xx * (xx + 6.0);
}

double g3_sphere(const Matrix& x) {
    if (x.dim() != 3) throw DimensionMismatch("g3_sphere: requires a 3x3 matrix");
    const double xx = frobenius_norm_sq(x);
    return (xx - 3.0) * (xx - 3.0);
}

} // namespace polywell
