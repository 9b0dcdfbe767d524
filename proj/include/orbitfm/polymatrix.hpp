#pragma once

#include <cstddef>
#include <vector>

#include "orbitfm/poly.hpp"

namespace orbitfm {

/// Dense row-major matrix of polynomials sharing one chart.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(ChartPtr chart, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(ChartPtr chart, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const ChartPtr& chart() const { return chart_; }

  Poly& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_symmetric() const;
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

 private:
  ChartPtr chart_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> data_;
};

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix transpose(const PolyMatrix& m);

/// Division-free determinant (expansion over column subsets, O(n 2^n)).
Poly determinant(const PolyMatrix& m);

PolyMatrix adjugate(const PolyMatrix& m);

/// Inverse of a matrix whose determinant is a single Laurent term (a unit).
/// Throws NonExactDivision otherwise.
PolyMatrix inverse_unit_det(const PolyMatrix& m);

}  // namespace orbitfm
