#pragma once

// Small dense real matrices (desk scale, n <= 64). Row-major storage;
// inner loops go through the kernels.

#include <initializer_list>
#include <vector>

#include "isospec/kernels.hpp"

namespace isospec {

using Vec = std::vector<double>;

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), d_(static_cast<size_t>(rows) * cols, 0.0) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return d_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return d_[static_cast<size_t>(i) * cols_ + j]; }

    double* row(int i) { return d_.data() + static_cast<size_t>(i) * cols_; }
    const double* row(int i) const { return d_.data() + static_cast<size_t>(i) * cols_; }

    const std::vector<double>& data() const { return d_; }
    std::vector<double>& data() { return d_; }

    Vec col(int j) const;
    void set_col(int j, const Vec& v);

    Matrix transposed() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(double a);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

    bool operator==(const Matrix& o) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> d_;
};

// C = A * B
Matrix matmul(const Matrix& a, const Matrix& b);
// C = A^T * B
Matrix matmul_at_b(const Matrix& a, const Matrix& b);
// C = A * B^T
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);

Vec matvec(const Matrix& a, const Vec& x);

// rank-one update: A += a * x y^T
void add_outer(Matrix& m, double a, const Vec& x, const Vec& y);

double max_abs(const Matrix& m);
double frobenius(const Matrix& m);
// max |A_ij - A_ji|
double asymmetry(const Matrix& m);
void symmetrize(Matrix& m);

double dot(const Vec& x, const Vec& y);
double norm2(const Vec& x);
double max_abs(const Vec& x);
void axpy(double a, const Vec& x, Vec& y);
void scale(double a, Vec& x);

}  // namespace isospec
