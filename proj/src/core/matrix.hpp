#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace spca {

// Dense real matrix, row-major, observations in rows and variables in
// columns.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix from_column(const std::vector<double>& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(double s) const;

  std::vector<double> col(std::size_t j) const;
  std::vector<double> row(std::size_t i) const;
  void set_col(std::size_t j, const std::vector<double>& v);

  // Keeps the listed columns, in the given order.
  Matrix select_cols(const std::vector<std::size_t>& idx) const;
  // First k columns.
  Matrix head_cols(std::size_t k) const;
  // Appends v as a new last column.
  void append_col(const std::vector<double>& v);

  std::vector<double> mult_vec(const std::vector<double>& v) const;
  std::vector<double> tmult_vec(const std::vector<double>& v) const;

  double frobenius_norm() const;
  double sumsq() const;  // trc(X^T X)
  bool all_finite() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Small vector helpers used throughout the solvers.
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& v);
double norm1(const std::vector<double>& v);
void scale_inplace(std::vector<double>& v, double s);
// Normalizes to unit L2 norm; returns the original norm (0 if zero vector,
// in which case v is left untouched).
double normalize(std::vector<double>& v);

}  // namespace spca
