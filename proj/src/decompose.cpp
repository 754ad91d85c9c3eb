#include "polywell/decompose.hpp"

namespace polywell {

Decomposition build(const Certificate& cert) {
    if (!cert.polyconvex())
        throw NotPolyconvexError("build: decomposition undefined for a not_polyconvex certificate",
                                 cert);
    const Matrix& q = *cert.Q;
    const Matrix& b = *cert.B;
    return Decomposition{q.dim(), cert.a, q, b, -8.0 * cert.a * cert.a};
}

namespace {

Matrix rotated_frame(const Decomposition& dec, const Matrix& x) {
    check_same_dim(dec.Q, x, "decomposition");
    return matmul(dec.Q.transpose(), x - dec.B);
}

} // namespace

double eval_convex(const Decomposition& dec, const Matrix& x) {
    const Matrix y = rotated_frame(dec, x);
    const double yy = frobenius_norm_sq(y);
    const double a2 = dec.a * dec.a;
    const double skew = frobenius_norm_sq(skew_part(y));
    const double nd = static_cast<double>(dec.n);
    return yy * yy + 2.0 * a2 * (nd - 2.0) * yy + 8.0 * a2 * skew + nd * nd * a2 * a2;
}

double eval_null(const Decomposition& dec, const Matrix& x) {
    return dec.null_coeff * s2(rotated_frame(dec, x));
}

Matrix convex_gradient(const Decomposition& dec, const Matrix& x) {
    const Matrix y = rotated_frame(dec, x);
    const double yy = frobenius_norm_sq(y);
    const double a2 = dec.a * dec.a;
    const double nd = static_cast<double>(dec.n);
    Matrix grad_y = 4.0 * yy * y + 4.0 * a2 * (nd - 2.0) * y + 16.0 * a2 * skew_part(y);
    return matmul(dec.Q, grad_y);
}

} // namespace polywell
