#include "srw/exact_linalg.hpp"

#include <utility>

namespace srw::exact {

Matrix Matrix::columns(const std::vector<std::size_t>& idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = (*this)(i, idx[k]);
  return out;
}

namespace {

// In-place Gaussian elimination; returns pivot columns. Optional rhs rides along.
std::vector<std::size_t> eliminate(Matrix& m, std::vector<Rational>* rhs, int* sign = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
      if (rhs) std::swap((*rhs)[p], (*rhs)[r]);
      if (sign) *sign = -*sign;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
      if (rhs) (*rhs)[i] -= f * (*rhs)[r];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix m) { return eliminate(m, nullptr).size(); }

Rational determinant(Matrix m) {
  if (m.rows() != m.cols()) return 0;
  int sign = 1;
  auto piv = eliminate(m, nullptr, &sign);
  if (piv.size() < m.rows()) return 0;
  Rational d = sign;
  for (std::size_t i = 0; i < m.rows(); ++i) d *= m(i, i);
  return d;
}

std::optional<std::vector<Rational>> solve(Matrix a, std::vector<Rational> b) {
  auto piv = eliminate(a, &b);
  if (piv.size() < a.cols()) return std::nullopt;
  for (std::size_t i = piv.size(); i < a.rows(); ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(a.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = b[r] / a(r, piv[r]);
  return x;
}

}  // namespace srw::exact
