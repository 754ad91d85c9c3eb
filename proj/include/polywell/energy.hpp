#pragma once

#include <vector>

#include "polywell/matrix.hpp"

namespace polywell {

/// The pair of wells (X1, X2) with the cached half-gap and midpoint
/// delta = (X1 - X2)/2, mid = (X1 + X2)/2, so that X1 = mid + delta and
/// X2 = mid - delta.
struct DoubleWell {
    Matrix x1;
    Matrix x2;
    Matrix delta;
    Matrix mid;
    int n;

    DoubleWell(Matrix X1, Matrix X2);
};

struct RankOneDirection {
    std::vector<double> u;
    std::vector<double> v;
};

/// f(X) = |X - X1|^2 |X - X2|^2, evaluated in product form (numerically
/// safest near the wells).
double eval(const DoubleWell& dw, const Matrix& x);

/// The centered energy g(Z) = |Z - delta|^2 |Z + delta|^2 evaluated through
/// its expanded quartic form
///   |Z|^4 + 2|delta|^2 |Z|^2 + |delta|^4 - 4 (tr Z^T delta)^2,
/// so eval_g(dw, Z) == eval(dw, Z + mid) up to roundoff. The expansion is
/// deliberately a different code path from eval; cross-validation between
/// the two is a standing test.
double eval_g(const DoubleWell& dw, const Matrix& z);

/// Analytic gradient of f: 2|X-X2|^2 (X-X1) + 2|X-X1|^2 (X-X2).
Matrix gradient(const DoubleWell& dw, const Matrix& x);

/// Second derivative of t -> g(Z + t u v^T) at t = 0:
///   8 <Z, u v^T>^2 + 4 (|Z|^2 + |delta|^2) |u|^2 |v|^2 - 8 (u^T delta v)^2.
double hessian_rank_one(const DoubleWell& dw, const Matrix& z, const RankOneDirection& d);

/// 2x2 frame-invariant variant |X|^4 + 4 - 8 det X. Nonnegative; vanishes
/// exactly on SO(2), in particular at +-I.
double g2_frame(const Matrix& x);

/// 3x3 frame-invariant variant |X|^2 (|X|^2 + 6): nonnegative, zero only at
/// the origin.
double g3_origin(const Matrix& x);

/// 3x3 frame-invariant variant (|X|^2 - 3)^2: vanishes on the sphere
/// |X|^2 = 3 (hence at +-I) and has a negative definite Hessian at the
/// origin, so it cannot be polyconvex.
double g3_sphere(const Matrix& x);

} // namespace polywell
