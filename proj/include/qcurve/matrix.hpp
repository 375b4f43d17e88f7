#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "qcurve/errors.hpp"

namespace qcurve {

/// Small dense square-or-rectangular matrix over any ring-like T.
template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> values)
      : rows_(rows), cols_(cols), data_(values) {
    if (data_.size() != rows * cols) throw UsageError("matrix initializer size mismatch");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  template <class F>
  Matrix map(F&& f) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = f(x);
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, data_.front());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  T trace() const {
    T s = data_.front() - data_.front();
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s = s + (*this)(i, i);
    return s;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] = a.data_[k] + b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] = a.data_[k] - b.data_[k];
    return a;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw UsageError("matrix product shape mismatch");
    T zero = a.data_.front() - a.data_.front();
    Matrix r(a.rows_, b.cols_, zero);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        T s = zero;
        for (std::size_t k = 0; k < a.cols_; ++k) s = s + a(i, k) * b(k, j);
        r(i, j) = s;
      }
    return r;
  }
  template <class S>
  friend Matrix scale(const S& s, Matrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("matrix shape mismatch");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

}  // namespace qcurve
