#include "orbitfm/linsolve.hpp"

#include <set>

namespace orbitfm {

namespace {

using Row = std::map<std::size_t, Rational>;

struct PivotRow {
  Row row;  // coefficient 1 at the pivot column
  Rational rhs;
};

// row -= factor * pivot
void axpy(Row& row, Rational& rhs, const Rational& factor, const PivotRow& pivot) {
  for (const auto& [col, c] : pivot.row) {
    auto [it, inserted] = row.try_emplace(col, -factor * c);
    if (!inserted) {
      it->second -= factor * c;
      if (it->second == 0) row.erase(it);
    }
  }
  rhs -= factor * pivot.rhs;
}

}  // namespace

LinearSolveResult solve_linear(std::size_t num_unknowns, const std::vector<LinearEquation>& eqs) {
  std::map<std::size_t, PivotRow> pivots;
  LinearSolveResult result;

  for (const auto& eq : eqs) {
    Row row;
    for (const auto& [col, c] : eq.coeffs) {
      if (c != 0) row[col] += c;
    }
    std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
    Rational rhs = eq.rhs;

    // Pivot rows are kept fully reduced, so one pass clears all pivot columns.
    std::vector<std::size_t> hits;
    for (const auto& [col, c] : row) {
      if (pivots.count(col)) hits.push_back(col);
    }
    for (auto col : hits) {
      auto it = row.find(col);
      if (it == row.end()) continue;
      Rational factor = it->second;
      axpy(row, rhs, factor, pivots.at(col));
    }

    if (row.empty()) {
      if (rhs != 0) {
        result.kind = SolveKind::Inconsistent;
        return result;
      }
      continue;
    }

    const std::size_t pcol = row.begin()->first;
    const Rational inv = Rational(1) / row.begin()->second;
    for (auto& [col, c] : row) c *= inv;
    rhs *= inv;
    PivotRow fresh{std::move(row), rhs};

    for (auto& [col, prow] : pivots) {
      auto it = prow.row.find(pcol);
      if (it == prow.row.end()) continue;
      Rational factor = it->second;
      axpy(prow.row, prow.rhs, factor, fresh);
    }
    pivots.emplace(pcol, std::move(fresh));
  }

  result.solution.assign(num_unknowns, Rational(0));
  for (std::size_t j = 0; j < num_unknowns; ++j) {
    if (!pivots.count(j)) result.free_unknowns.push_back(j);
  }
  for (const auto& [col, prow] : pivots) result.solution[col] = prow.rhs;

  if (result.free_unknowns.empty()) {
    result.kind = SolveKind::Unique;
    return result;
  }
  result.kind = SolveKind::Parametric;
  for (auto f : result.free_unknowns) {
    std::vector<Rational> v(num_unknowns, Rational(0));
    v[f] = 1;
    for (const auto& [col, prow] : pivots) {
      auto it = prow.row.find(f);
      if (it != prow.row.end()) v[col] = -it->second;
    }
    result.null_space.push_back(std::move(v));
  }
  return result;
}

LinearForm LinearForm::unknown(std::size_t index, const Poly& coefficient) {
  LinearForm f(Poly(coefficient.chart()));
  if (!coefficient.is_zero()) f.parts_.emplace(index, coefficient);
  return f;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  base_ += o.base_;
  for (const auto& [i, p] : o.parts_) {
    auto [it, inserted] = parts_.try_emplace(i, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) parts_.erase(it);
    }
  }
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
  base_ -= o.base_;
  for (const auto& [i, p] : o.parts_) {
    auto [it, inserted] = parts_.try_emplace(i, -p);
    if (!inserted) {
      it->second -= p;
      if (it->second.is_zero()) parts_.erase(it);
    }
  }
  return *this;
}

LinearForm& LinearForm::operator*=(const Poly& p) {
  base_ = base_ * p;
  for (auto it = parts_.begin(); it != parts_.end();) {
    it->second = it->second * p;
    it = it->second.is_zero() ? parts_.erase(it) : std::next(it);
  }
  return *this;
}

LinearForm& LinearForm::operator*=(const Rational& c) {
  if (c == 0) {
    base_ *= c;
    parts_.clear();
    return *this;
  }
  base_ *= c;
  for (auto& [i, p] : parts_) p *= c;
  return *this;
}

void LinearForm::append_vanishing(std::vector<LinearEquation>& eqs) const {
  std::set<Monomial, GradedLexGreater> support;
  for (const auto& [m, c] : base_.terms()) support.insert(m);
  for (const auto& [i, p] : parts_) {
    for (const auto& [m, c] : p.terms()) support.insert(m);
  }
  for (const auto& m : support) {
    LinearEquation eq;
    for (const auto& [i, p] : parts_) {
      Rational c = p.coefficient(m);
      if (c != 0) eq.coeffs[i] = c;
    }
    eq.rhs = -base_.coefficient(m);
    eqs.push_back(std::move(eq));
  }
}

Poly LinearForm::evaluate(const std::vector<Rational>& values) const {
  Poly out = base_;
  for (const auto& [i, p] : parts_) out += p * values.at(i);
  return out;
}

LinearForm diff_coord(const LinearForm& f, std::size_t coord) {
  LinearForm out(diff_coord(f.base_, coord));
  for (const auto& [i, p] : f.parts_) {
    Poly d = diff_coord(p, coord);
    if (!d.is_zero()) out.parts_.emplace(i, std::move(d));
  }
  return out;
}

}  // namespace orbitfm
