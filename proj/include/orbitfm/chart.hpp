#pragma once

#include <memory>
#include <string>
#include <vector>

#include "orbitfm/rational.hpp"

namespace orbitfm {

/// One ring variable of a chart. `weight` is its weighted degree; `laurent`
/// allows negative exponents.
struct VarSpec {
  std::string name;
  Rational weight;
  bool laurent = false;
};

/// A coordinate of the manifold as seen from the ring. Most coordinates are a
/// ring variable. An exponential coordinate c is instead carried by a variable
/// E standing for e^c, plus optionally a variable for explicit occurrences of
/// c itself (the t^{l+1} in the head term of the potential); d/dc then acts as
/// d/d(explicit) + s E d/dE where E = e^{s c} (s = `exp_scale`, usually 1).
struct Coordinate {
  std::string name;
  int var = -1;
  int log_var = -1;
  int exp_var = -1;
  Rational exp_scale = 1;

  bool is_exponential() const { return exp_var >= 0; }
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Ordered, weighted variable set plus the coordinates built from it.
/// Immutable after construction and shared by every Poly that lives on it.
class Chart {
 public:
  static constexpr std::size_t kMaxVars = 16;

  Chart(std::string name, std::vector<VarSpec> vars, std::vector<Coordinate> coords);

  /// Chart whose coordinates are exactly its variables, in order.
  static ChartPtr polynomial_ring(std::string name, std::vector<VarSpec> vars);

  /// Chart with plain coordinates for `vars` followed by one exponential
  /// coordinate `log_name`; the ring gains an explicit variable `log_name`
  /// of weight zero and `exp_name` (Laurent) of weight `exp_weight`,
  /// standing for e^{exp_scale * log_name}.
  static ChartPtr with_exponential(std::string name, std::vector<VarSpec> vars,
                                   const std::string& log_name,
                                   const std::string& exp_name, Rational exp_weight,
                                   Rational exp_scale = 1);

  const std::string& name() const { return name_; }
  std::size_t num_vars() const { return vars_.size(); }
  const VarSpec& var(std::size_t i) const { return vars_[i]; }
  const std::vector<VarSpec>& vars() const { return vars_; }

  /// -1 when absent.
  int find_var(const std::string& name) const;
  /// Throws std::out_of_range when absent.
  std::size_t var_index(const std::string& name) const;

  std::size_t num_coords() const { return coords_.size(); }
  const Coordinate& coord(std::size_t i) const { return coords_[i]; }
  const std::vector<Coordinate>& coords() const { return coords_; }
  int find_coord(const std::string& name) const;

  /// Same names, weights, Laurent flags and coordinates.
  bool same_structure(const Chart& other) const;

 private:
  std::string name_;
  std::vector<VarSpec> vars_;
  std::vector<Coordinate> coords_;
};

/// True when both refer to the same chart or to structurally identical ones.
bool compatible(const ChartPtr& a, const ChartPtr& b);

}  // namespace orbitfm
