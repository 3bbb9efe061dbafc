#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "nilhom/rational.hpp"

namespace nilhom {

// Dense rational matrix, row major. Vectors are columns: y = A*x.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n);
  static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Rat& c) const;
  Vec operator*(const Vec& x) const;

  Mat transpose() const;
  bool is_zero() const;
  Mat pow(unsigned e) const;

  Vec row(std::size_t i) const;
  void set_row(std::size_t i, const Vec& v);

  // In-place reduced row echelon form; returns pivot column indices.
  std::vector<std::size_t> rref();

  std::size_t rank() const;

  // Basis of {x : A x = 0}, deterministic order (free columns ascending).
  std::vector<Vec> kernel_basis() const;

  // One solution of A x = b, if any.
  std::optional<Vec> solve(const Vec& b) const;

  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Mat from_cols(const std::vector<Vec>& cols, std::size_t rows);

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

}  // namespace nilhom
