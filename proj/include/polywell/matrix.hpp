#pragma once

#include <cstddef>
#include <vector>

#include "polywell/errors.hpp"

namespace polywell {

/// Dense square real matrix, row-major, dimension carried at runtime.
/// Entries are validated finite on construction; n >= 2 always.
class Matrix {
public:
    explicit Matrix(int n);                      // zero matrix
    static Matrix identity(int n);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    int dim() const { return n_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    std::vector<std::vector<double>> rows() const;

    Matrix transpose() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
    friend Matrix operator*(double s, Matrix rhs) { return rhs *= s; }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.n_ == b.n_ && a.data_ == b.data_;
    }

    void check_finite() const; // throws ValidationError

private:
    int n_;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

double trace(const Matrix& x);
double frobenius_norm_sq(const Matrix& x);
double frobenius_inner(const Matrix& a, const Matrix& b); // tr(a^T b)

/// Determinant via partial-pivot elimination; fine for the single-digit
/// dimensions used here.
double det(const Matrix& x);

/// Cofactor matrix, defined for singular inputs too: X (cof X)^T = det(X) I.
Matrix cofactor(const Matrix& x);

/// Sum of all principal 2x2 minors. Equals det for n = 2 and tr cof for n = 3.
double s2(const Matrix& x);

Matrix sym_part(const Matrix& x);  // (X + X^T)/2
Matrix skew_part(const Matrix& x); // (X - X^T)/2

inline void check_same_dim(const Matrix& a, const Matrix& b, const char* what) {
    if (a.dim() != b.dim())
        throw DimensionMismatch(std::string(what) + ": dimensions " +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

// small vector helpers shared by the witness / sampling code
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm_sq(const std::vector<double>& v);
Matrix outer(const std::vector<double>& u, const std::vector<double>& v); // u v^T

} // namespace polywell
