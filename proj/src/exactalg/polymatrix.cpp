#include "orbitfm/polymatrix.hpp"

#include <bit>
#include <stdexcept>

#include "orbitfm/errors.hpp"

namespace orbitfm {

PolyMatrix::PolyMatrix(ChartPtr chart, std::size_t rows, std::size_t cols)
    : chart_(std::move(chart)), rows_(rows), cols_(cols), data_(rows * cols, Poly(chart_)) {}

PolyMatrix PolyMatrix::identity(ChartPtr chart, std::size_t n) {
  PolyMatrix m(chart, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(chart, 1);
  return m;
}

bool PolyMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      if (!((*this)(i, j) == (*this)(j, i))) return false;
    }
  }
  return true;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  PolyMatrix out(a.chart() ? a.chart() : b.chart(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

PolyMatrix transpose(const PolyMatrix& m) {
  PolyMatrix out(m.chart(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  }
  return out;
}

Poly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Poly::constant(m.chart(), 1);
  if (n > 20) throw std::invalid_argument("determinant: matrix too large");
  // minors[S] = det of rows 0..|S|-1 restricted to column set S
  std::vector<Poly> minors(std::size_t{1} << n, Poly(m.chart()));
  minors[0] = Poly::constant(m.chart(), 1);
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    const std::size_t row = static_cast<std::size_t>(std::popcount(mask)) - 1;
    Poly acc(m.chart());
    int sign = 1;
    // Laplace along the last row: columns of the subset in increasing order.
    const int total = std::popcount(mask);
    int position = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (std::size_t{1} << col))) continue;
      sign = ((total - 1 - position) % 2 == 0) ? 1 : -1;
      ++position;
      const Poly& entry = m(row, col);
      const Poly& minor = minors[mask & ~(std::size_t{1} << col)];
      if (entry.is_zero() || minor.is_zero()) continue;
      if (sign > 0) {
        acc += entry * minor;
      } else {
        acc -= entry * minor;
      }
    }
    minors[mask] = std::move(acc);
  }
  return minors.back();
}

PolyMatrix adjugate(const PolyMatrix& m) {
  const std::size_t n = m.rows();
  PolyMatrix adj(m.chart(), n, n);
  if (n == 1) {
    adj(0, 0) = Poly::constant(m.chart(), 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix minor(m.chart(), n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc) = m(r, c);
          ++cc;
        }
        ++rr;
      }
      Poly d = determinant(minor);
      adj(i, j) = ((i + j) % 2 == 0) ? d : -d;
    }
  }
  return adj;
}

PolyMatrix inverse_unit_det(const PolyMatrix& m) {
  Poly det = determinant(m);
  if (!det.is_monomial()) {
    throw NonExactDivision("matrix determinant " + to_string(det) + " is not a unit");
  }
  PolyMatrix adj = adjugate(m);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      adj(i, j) = exact_div(adj(i, j), det);
    }
  }
  return adj;
}

}  // namespace orbitfm
