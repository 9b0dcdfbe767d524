#pragma once

#include <string>
#include <vector>

#include "orbitfm/rational.hpp"

namespace orbitfm {

enum class Family { B, C };

std::string to_string(Family f);
/// "B"/"C" (case-insensitive); throws InvalidSpec otherwise.
Family parse_family(const std::string& text);

/// Root system family, rank l and the marked Dynkin vertex k (1 <= k <= l).
struct RootSystemSpec {
  Family family = Family::C;
  int rank = 1;
  int vertex = 1;

  void validate() const;
  std::string label() const;  // e.g. "C3,k=1"
  friend bool operator==(const RootSystemSpec&, const RootSystemSpec&) = default;
};

/// The invariant indefinite form on V + R in simple-coroot coordinates,
/// scaled by 4 pi^2. Indices 0..l-1 are x_1..x_l, index l is x_{l+1}.
struct ExtendedMetric {
  std::vector<std::vector<Rational>> m;

  std::size_t size() const { return m.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
};

struct DegreeData {
  /// d_j = (omega_j, omega_k), j = 1..l (stored 0-based).
  std::vector<Rational> d;
  /// Determinant of the Cartan matrix.
  int cartan_det = 2;
  /// Degrees of the flat coordinates t^1..t^{l+1} of the C_l structure with
  /// the same (l, k) (the B_l structure is isomorphic to it).
  std::vector<Rational> d_tilde;
};

struct RootData {
  RootSystemSpec spec;
  ExtendedMetric metric;
  DegreeData degrees;
};

RootData build_root_data(const RootSystemSpec& spec);

/// Flat-coordinate degrees of the C_l, vertex k structure (1-based index
/// i in 1..l+1).
Rational flat_degree(int rank, int vertex, int i);

/// The duality involution on 1..l+1: reflection inside each component of the
/// Dynkin diagram with vertex k deleted, together with k <-> l+1.
int dual_index(const RootSystemSpec& spec, int i);

}  // namespace orbitfm
