#pragma once

#include "polywell/certify.hpp"
#include "polywell/matrix.hpp"

namespace polywell {

/// The explicit split f = f_C + f_L of a certified-polyconvex double well,
/// evaluated in the rotated frame Y = Q^T (X - B):
///   f_C(X) = |Y|^4 + 2 a^2 (n-2) |Y|^2 + 8 a^2 |Y_a|^2 + n^2 a^4   (convex)
///   f_L(X) = -8 a^2 s2(Y)                                   (null Lagrangian)
struct Decomposition {
    int n;
    double a;
    Matrix Q;
    Matrix B;
    double null_coeff; // -8 a^2
};

/// Copies (n, a, Q, B) out of a polyconvex certificate; refuses anything else.
Decomposition build(const Certificate& cert);

double eval_convex(const Decomposition& dec, const Matrix& x);
double eval_null(const Decomposition& dec, const Matrix& x);

/// Analytic gradient of f_C by the chain rule through Y = Q^T (X - B):
/// Q (4 |Y|^2 Y + 4 a^2 (n-2) Y + 16 a^2 Y_a). The skew term's factor comes
/// from d|Y_a|^2 = <2 Y_a, dY>; the finite-difference oracle in the tests is
/// the arbiter for it.
Matrix convex_gradient(const Decomposition& dec, const Matrix& x);

} // namespace polywell
