#pragma once

#include <functional>

#include "polywell/matrix.hpp"

namespace polywell {

/// Central-difference gradient of a scalar matrix function,
/// step h = 1e-5 (1 + |X|_F) per entry.
Matrix fd_gradient(const std::function<double(const Matrix&)>& fn, const Matrix& x);

/// Central second difference (phi(h) - 2 phi(0) + phi(-h)) / h^2.
double fd_second_difference(const std::function<double(double)>& phi, double h);

/// Step size used for directional second differences: 1e-4 (1 + |Z|_F).
double fd_second_step(const Matrix& z);

} // namespace polywell
