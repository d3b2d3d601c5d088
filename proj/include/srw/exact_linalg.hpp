#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "srw/rational.hpp"

namespace srw::exact {

// Dense row-major rational matrix; sizes here are tens, not thousands.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Matrix columns(const std::vector<std::size_t>& idx) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

std::size_t rank(Matrix m);
Rational determinant(Matrix m);

// Unique solution of A x = b when A has full column rank and the system is consistent.
std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b);

}  // namespace srw::exact
