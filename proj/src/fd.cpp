#include "polywell/fd.hpp"

#include <cmath>

namespace polywell {

Matrix fd_gradient(const std::function<double(const Matrix&)>& fn, const Matrix& x) {
    const int n = x.dim();
    const double h = 1e-5 * (1.0 + std::sqrt(frobenius_norm_sq(x)));
    Matrix g(n);
    Matrix probe = x;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double saved = probe(i, j);
            probe(i, j) = saved + h;
            const double fp = fn(probe);
            probe(i, j) = saved - h;
            const double fm = fn(probe);
            probe(i, j) = saved;
            g(i, j) = (fp - fm) / (2.0 * h);
        }
    return g;
}

double fd_second_difference(const std::function<double(double)>& phi, double h) {
    return (phi(h) - 2.0 * phi(0.0) + phi(-h)) / (h * h);
}

double fd_second_step(const Matrix& z) {
    return 1e-4 * (1.0 + std::sqrt(frobenius_norm_sq(z)));
}

} // namespace polywell
