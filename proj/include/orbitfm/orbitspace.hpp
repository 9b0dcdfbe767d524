#pragma once

#include <optional>
#include <vector>

#include "orbitfm/chart.hpp"
#include "orbitfm/poly.hpp"
#include "orbitfm/polymatrix.hpp"
#include "orbitfm/rootdata.hpp"

namespace orbitfm {

/// y^1..y^l with weights d_j, the exponential coordinate y^{l+1} and
/// E = e^{y^{l+1}} of weight 1. For B_l with k = l the metric is polynomial
/// only in Eh = e^{y^{l+1}/2} (weight 1/2), which replaces E.
ChartPtr make_y_chart(const RootSystemSpec& spec);

/// theta^0..theta^l, each of weight k (C_l only).
ChartPtr make_theta_chart(const RootSystemSpec& spec);

/// Invertible change of coordinates between two charts.
///
/// `source_in_target` gives every ring variable of the source chart as a
/// polynomial on the target chart; this direction is what transports tensors.
/// `target_in_source` is present when the forward direction is itself a
/// (Laurent) polynomial map; construction then checks that the two compose
/// to the identity both ways.
struct CoordMap {
  ChartPtr source;
  ChartPtr target;
  std::vector<Poly> source_in_target;
  std::optional<std::vector<Poly>> target_in_source;

  /// Source coordinate `coord` as a function on the target chart.
  Poly source_coordinate(std::size_t coord) const;

  /// Throws ChartMismatch if forward and inverse do not compose to identity.
  void verify() const;

  /// Jacobian K(p, c) = d s^p / d T^c, on the target chart.
  PolyMatrix inverse_jacobian() const;
};

CoordMap make_coord_map(ChartPtr source, ChartPtr target, std::vector<Poly> source_in_target,
                        std::optional<std::vector<Poly>> target_in_source = std::nullopt);

/// first: A -> B, second: B -> C; result A -> C.
CoordMap compose(const CoordMap& first, const CoordMap& second);

CoordMap identity_map(const ChartPtr& chart);

/// Basic invariants as polynomials on an auxiliary chart.
///
/// C_l: base chart (zeta_1..zeta_l, E) and y^j = E^{d_j} sigma_j(zeta).
/// B_l: base chart (r_1..r_l, Q) with r_a^2 = zeta_a and Q^4 = E, so the
/// square root in y^l = prod zeta_a^{1/2} and the fractional twists E^{d_j}
/// stay polynomial.
struct Generators {
  RootSystemSpec spec;
  ChartPtr base;
  ChartPtr y_chart;
  /// Images of y^1..y^l followed by the image of E (Eh for B_l, k = l).
  std::vector<Poly> y_of_base;
};

Generators build_generators(const RootSystemSpec& spec);

/// sigma_j of the given polynomials (sigma_0 = 1).
Poly elementary_symmetric(const std::vector<Poly>& xs, int j, const ChartPtr& chart);

/// P(u) = sum_j u^{l-j} theta^j with theta^0 = E^k, theta^j = y^j E^{k-j}
/// (j < k), theta^j = y^j (j >= k).
struct GenPolyP {
  RootSystemSpec spec;
  ChartPtr theta_chart;
  /// theta chart -> y chart.
  CoordMap theta_to_y;

  /// Checks P(u) = E^k prod (u + zeta_j) after substituting the generators.
  bool expansion_identity_holds() const;
};

GenPolyP assemble_P(const RootSystemSpec& spec);

/// The x-space oracle chart: delta_a = e^{i pi x_a} and q = e^{i pi x_{l+1}/2}
/// (all Laurent), so E = q^4.
ChartPtr make_oracle_chart(const RootSystemSpec& spec);

/// Generator images (and E) on the oracle chart, for the generators of
/// `gens` (same ordering as Generators::y_of_base).
std::vector<Poly> generators_on_oracle(const Generators& gens, const ChartPtr& oracle);

/// sum_{a,b} M_ab D_a f_i D_b f_j with D_a = (i pi)^{-1} d/dx_a and M the
/// extended metric; g^{ij} is -1/4 of this. `log_scale[i]` non-zero marks f_i
/// as c * 2 pi i x_{l+1} instead of a Laurent polynomial (then D_{l+1} f_i = 2c).
PolyMatrix oracle_gram(const RootSystemSpec& spec, const ChartPtr& oracle,
                       const std::vector<Poly>& functions, const std::vector<Rational>& log_scale);

/// g^{ij} computed from its definition in x-space and re-expressed on the
/// y-chart by solving for coefficients over the finite monomial basis of the
/// right weighted degree. Throws ReexpressionFailed if that system has no
/// unique solution; InvalidSpec if rank exceeds `max_rank`.
PolyMatrix compute_g_direct(const RootSystemSpec& spec, int max_rank = 4);

/// All monomials in `vars` (nonnegative exponents, positive weights) of
/// weighted degree exactly `degree`.
std::vector<Monomial> monomials_of_degree(const Chart& chart, const std::vector<std::size_t>& vars,
                                          const Rational& degree);

}  // namespace orbitfm
