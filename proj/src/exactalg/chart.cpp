#include "orbitfm/chart.hpp"

#include <set>
#include <stdexcept>

#include "orbitfm/errors.hpp"

namespace orbitfm {

Chart::Chart(std::string name, std::vector<VarSpec> vars, std::vector<Coordinate> coords)
    : name_(std::move(name)), vars_(std::move(vars)), coords_(std::move(coords)) {
  if (vars_.size() > kMaxVars) {
    throw InvalidSpec("chart '" + name_ + "' exceeds " + std::to_string(kMaxVars) + " variables");
  }
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (!seen.insert(v.name).second) {
      throw InvalidSpec("duplicate variable '" + v.name + "' in chart '" + name_ + "'");
    }
  }
  auto valid = [&](int idx) { return idx >= -1 && idx < static_cast<int>(vars_.size()); };
  for (const auto& c : coords_) {
    if (!valid(c.var) || !valid(c.log_var) || !valid(c.exp_var) ||
        (c.var < 0 && c.exp_var < 0)) {
      throw InvalidSpec("malformed coordinate '" + c.name + "' in chart '" + name_ + "'");
    }
  }
}

ChartPtr Chart::polynomial_ring(std::string name, std::vector<VarSpec> vars) {
  std::vector<Coordinate> coords;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    coords.push_back({vars[i].name, static_cast<int>(i), -1, -1});
  }
  return std::make_shared<Chart>(std::move(name), std::move(vars), std::move(coords));
}

ChartPtr Chart::with_exponential(std::string name, std::vector<VarSpec> vars,
                                 const std::string& log_name, const std::string& exp_name,
                                 Rational exp_weight, Rational exp_scale) {
  std::vector<Coordinate> coords;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    coords.push_back({vars[i].name, static_cast<int>(i), -1, -1});
  }
  const int log_idx = static_cast<int>(vars.size());
  vars.push_back({log_name, Rational(0), false});
  const int exp_idx = static_cast<int>(vars.size());
  vars.push_back({exp_name, std::move(exp_weight), true});
  coords.push_back({log_name, -1, log_idx, exp_idx, std::move(exp_scale)});
  return std::make_shared<Chart>(std::move(name), std::move(vars), std::move(coords));
}

int Chart::find_var(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::size_t Chart::var_index(const std::string& name) const {
  int i = find_var(name);
  if (i < 0) throw std::out_of_range("no variable '" + name + "' in chart '" + name_ + "'");
  return static_cast<std::size_t>(i);
}

int Chart::find_coord(const std::string& name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool Chart::same_structure(const Chart& other) const {
  if (vars_.size() != other.vars_.size() || coords_.size() != other.coords_.size()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& a = vars_[i];
    const auto& b = other.vars_[i];
    if (a.name != b.name || a.weight != b.weight || a.laurent != b.laurent) return false;
  }
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const auto& a = coords_[i];
    const auto& b = other.coords_[i];
    if (a.name != b.name || a.var != b.var || a.log_var != b.log_var || a.exp_var != b.exp_var ||
        a.exp_scale != b.exp_scale) {
      return false;
    }
  }
  return true;
}

bool compatible(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_structure(*b);
}

}  // namespace orbitfm
