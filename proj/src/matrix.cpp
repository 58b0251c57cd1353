#include "isospec/matrix.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace isospec {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    d_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw std::invalid_argument("ragged matrix initializer");
        d_.insert(d_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vec Matrix::col(int j) const {
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_col(int j, const Vec& v) {
    assert(static_cast<int>(v.size()) == rows_);
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    kern::axpy(1.0, o.d_.data(), d_.data(), d_.size());
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    kern::axpy(-1.0, o.d_.data(), d_.data(), d_.size());
    return *this;
}

Matrix& Matrix::operator*=(double a) {
    kern::scale(a, d_.data(), d_.size());
    return *this;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.rows());
    const Matrix bt = b.transposed();
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            c(i, j) = kern::dot(a.row(i), bt.row(j), static_cast<size_t>(a.cols()));
    return c;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
    const Matrix at = a.transposed();
    return matmul(at, b);
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
    assert(a.cols() == b.cols());
    Matrix c(a.rows(), b.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.rows(); ++j)
            c(i, j) = kern::dot(a.row(i), b.row(j), static_cast<size_t>(a.cols()));
    return c;
}

Vec matvec(const Matrix& a, const Vec& x) {
    assert(a.cols() == static_cast<int>(x.size()));
    Vec y(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        y[i] = kern::dot(a.row(i), x.data(), x.size());
    return y;
}

void add_outer(Matrix& m, double a, const Vec& x, const Vec& y) {
    assert(m.rows() == static_cast<int>(x.size()) && m.cols() == static_cast<int>(y.size()));
    for (int i = 0; i < m.rows(); ++i)
        kern::axpy(a * x[static_cast<size_t>(i)], y.data(), m.row(i), y.size());
}

double max_abs(const Matrix& m) {
    double r = 0.0;
    for (double v : m.data()) r = std::max(r, std::fabs(v));
    return r;
}

double frobenius(const Matrix& m) {
    return std::sqrt(kern::nrm2sq(m.data().data(), m.data().size()));
}

double asymmetry(const Matrix& m) {
    assert(m.rows() == m.cols());
    double r = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j)
            r = std::max(r, std::fabs(m(i, j) - m(j, i)));
    return r;
}

void symmetrize(Matrix& m) {
    assert(m.rows() == m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = v;
            m(j, i) = v;
        }
}

double dot(const Vec& x, const Vec& y) {
    assert(x.size() == y.size());
    return kern::dot(x.data(), y.data(), x.size());
}

double norm2(const Vec& x) { return std::sqrt(kern::nrm2sq(x.data(), x.size())); }

double max_abs(const Vec& x) {
    double r = 0.0;
    for (double v : x) r = std::max(r, std::fabs(v));
    return r;
}

void axpy(double a, const Vec& x, Vec& y) {
    assert(x.size() == y.size());
    kern::axpy(a, x.data(), y.data(), x.size());
}

void scale(double a, Vec& x) { kern::scale(a, x.data(), x.size()); }

}  // namespace isospec
