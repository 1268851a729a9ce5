#include "matrix.hpp"

#include <cmath>
#include <utility>

namespace spca {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw ShapeError("matrix data size does not match rows*cols");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_column(const std::vector<double>& v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw ShapeError("matrix product shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      const double* rrow = &rhs.data_[k * rhs.cols_];
      double* orow = &out.data_[i * rhs.cols_];
      for (std::size_t j = 0; j < rhs.cols_; ++j) orow[j] += a * rrow[j];
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw ShapeError("matrix sum shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw ShapeError("matrix difference shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
  return out;
}

Matrix Matrix::scaled(double s) const {
  Matrix out = *this;
  for (double& x : out.data_) x *= s;
  return out;
}

std::vector<double> Matrix::col(std::size_t j) const {
  std::vector<double> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<double> Matrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void Matrix::set_col(std::size_t j, const std::vector<double>& v) {
  if (v.size() != rows_) throw ShapeError("set_col length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      out(i, j) = (*this)(i, idx[j]);
  return out;
}

Matrix Matrix::head_cols(std::size_t k) const {
  Matrix out(rows_, k);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = (*this)(i, j);
  return out;
}

void Matrix::append_col(const std::vector<double>& v) {
  if (rows_ == 0) {
    rows_ = v.size();
    cols_ = 0;
    data_.clear();
  }
  if (v.size() != rows_) throw ShapeError("append_col length mismatch");
  std::vector<double> next((cols_ + 1) * rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j)
      next[i * (cols_ + 1) + j] = (*this)(i, j);
    next[i * (cols_ + 1) + cols_] = v[i];
  }
  ++cols_;
  data_ = std::move(next);
}

std::vector<double> Matrix::mult_vec(const std::vector<double>& v) const {
  if (v.size() != cols_) throw ShapeError("mult_vec length mismatch");
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* r = &data_[i * cols_];
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * v[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> Matrix::tmult_vec(const std::vector<double>& v) const {
  if (v.size() != rows_) throw ShapeError("tmult_vec length mismatch");
  std::vector<double> out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double a = v[i];
    if (a == 0.0) continue;
    const double* r = &data_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) out[j] += a * r[j];
  }
  return out;
}

double Matrix::frobenius_norm() const { return std::sqrt(sumsq()); }

double Matrix::sumsq() const {
  double acc = 0.0;
  for (double x : data_) acc += x * x;
  return acc;
}

bool Matrix::all_finite() const {
  for (double x : data_)
    if (!std::isfinite(x)) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::fabs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

double norm1(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += std::fabs(x);
  return acc;
}

void scale_inplace(std::vector<double>& v, double s) {
  for (double& x : v) x *= s;
}

double normalize(std::vector<double>& v) {
  const double n = norm2(v);
  if (n > 0.0) scale_inplace(v, 1.0 / n);
  return n;
}

}  // namespace spca
