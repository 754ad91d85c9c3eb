#include "polywell/matrix.hpp"

#include <cmath>
#include <cstdlib>

namespace polywell {

Matrix::Matrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n < 2) throw ValidationError("Matrix: dimension must be >= 2, got " + std::to_string(n));
}

Matrix Matrix::identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    if (n < 2) throw ValidationError("Matrix: dimension must be >= 2, got " + std::to_string(n));
    Matrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw ValidationError("Matrix: row " + std::to_string(i) + " has length " +
                                  std::to_string(rows[i].size()) + ", expected " + std::to_string(n));
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    m.check_finite();
    return m;
}

void Matrix::check_finite() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (!std::isfinite((*this)(i, j)))
                throw ValidationError("Matrix: entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is not finite");
}

std::vector<std::vector<double>> Matrix::rows() const {
    std::vector<std::vector<double>> out(n_);
    for (int i = 0; i < n_; ++i) {
        out[i].resize(n_);
        for (int j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    check_same_dim(*this, rhs, "operator+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    check_same_dim(*this, rhs, "operator-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    check_same_dim(a, b, "matmul");
    const int n = a.dim();
    Matrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    const int n = a.dim();
    if (static_cast<int>(x.size()) != n) throw DimensionMismatch("matvec: vector length mismatch");
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) y[i] += a(i, j) * x[j];
    return y;
}

double trace(const Matrix& x) {
    double t = 0.0;
    for (int i = 0; i < x.dim(); ++i) t += x(i, i);
    return t;
}

double frobenius_norm_sq(const Matrix& x) {
    double s = 0.0;
    for (double v : x.data()) s += v * v;
    return s;
}

double frobenius_inner(const Matrix& a, const Matrix& b) {
    check_same_dim(a, b, "frobenius_inner");
    double s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) s += a.data()[k] * b.data()[k];
    return s;
}

double det(const Matrix& x) {
    const int n = x.dim();
    Matrix w = x;
    double d = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(w(r, col)) > std::abs(w(piv, col))) piv = r;
        if (w(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(w(piv, j), w(col, j));
            d = -d;
        }
        d *= w(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = w(r, col) / w(col, col);
            for (int j = col; j < n; ++j) w(r, j) -= f * w(col, j);
        }
    }
    return d;
}

namespace {

double minor_det(const Matrix& x, int drop_row, int drop_col) {
    const int n = x.dim();
    if (n == 2) {
        // the 1x1 minor is just the opposite entry
        return x(1 - drop_row, 1 - drop_col);
    }
    Matrix sub(n - 1);
    int si = 0;
    for (int i = 0; i < n; ++i) {
        if (i == drop_row) continue;
        int sj = 0;
        for (int j = 0; j < n; ++j) {
            if (j == drop_col) continue;
            sub(si, sj) = x(i, j);
            ++sj;
        }
        ++si;
    }
    return det(sub);
}

} // namespace

Matrix cofactor(const Matrix& x) {
    const int n = x.dim();
    Matrix c(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            c(i, j) = sign * minor_det(x, i, j);
        }
    return c;
}

double s2(const Matrix& x) {
    const int n = x.dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += x(i, i) * x(j, j) - x(i, j) * x(j, i);
    return s;
}

Matrix sym_part(const Matrix& x) {
    const int n = x.dim();
    Matrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (x(i, j) + x(j, i));
    return s;
}

Matrix skew_part(const Matrix& x) {
    const int n = x.dim();
    Matrix s(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (x(i, j) - x(j, i));
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: vector length mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm_sq(const std::vector<double>& v) { return dot(v, v); }

Matrix outer(const std::vector<double>& u, const std::vector<double>& v) {
    if (u.size() != v.size()) throw DimensionMismatch("outer: vector length mismatch");
    Matrix m(static_cast<int>(u.size()));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) m(i, j) = u[i] * v[j];
    return m;
}

} // namespace polywell
