#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "orbitfm/poly.hpp"
#include "orbitfm/rational.hpp"

namespace orbitfm {

/// sum_j coeffs[j] * x_j = rhs
struct LinearEquation {
  std::map<std::size_t, Rational> coeffs;
  Rational rhs;
};

enum class SolveKind { Unique, Parametric, Inconsistent };

struct LinearSolveResult {
  SolveKind kind = SolveKind::Inconsistent;
  /// Unique: the solution. Parametric: the particular solution with every
  /// free unknown set to zero. Empty when Inconsistent.
  std::vector<Rational> solution;
  std::vector<std::size_t> free_unknowns;
  /// One basis vector per free unknown (Parametric only).
  std::vector<std::vector<Rational>> null_space;
};

/// Exact sparse Gauss-Jordan elimination over Q. Pivots are taken on the
/// lowest-indexed unknown, so free unknowns are the trailing ones.
LinearSolveResult solve_linear(std::size_t num_unknowns, const std::vector<LinearEquation>& eqs);

/// A polynomial affine in scalar unknowns: base + sum_i x_i * part_i.
/// Used to turn "this identity must hold" into linear equations for
/// undetermined coefficients.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(Poly base) : base_(std::move(base)) {}

  static LinearForm unknown(std::size_t index, const Poly& coefficient);

  const Poly& base() const { return base_; }
  const std::map<std::size_t, Poly>& parts() const { return parts_; }

  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator-=(const LinearForm& o);
  LinearForm& operator*=(const Poly& p);
  LinearForm& operator*=(const Rational& c);
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(LinearForm a, const Poly& p) { return a *= p; }
  friend LinearForm operator*(const Poly& p, LinearForm a) { return a *= p; }

  /// Appends one equation per monomial stating that the form vanishes.
  void append_vanishing(std::vector<LinearEquation>& eqs) const;

  Poly evaluate(const std::vector<Rational>& values) const;

  friend LinearForm diff_coord(const LinearForm& f, std::size_t coord);

 private:
  Poly base_;
  std::map<std::size_t, Poly> parts_;
};

LinearForm diff_coord(const LinearForm& f, std::size_t coord);

}  // namespace orbitfm
