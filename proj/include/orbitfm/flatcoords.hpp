#pragma once

#include <vector>

#include "orbitfm/metrics.hpp"
#include "orbitfm/orbitspace.hpp"

namespace orbitfm {

/// B^i_m for 1 <= i <= m <= n (1-based; row/column 0 unused).
struct BSeries {
  int n = 0;
  std::vector<std::vector<Rational>> b;

  const Rational& operator()(int i, int m) const {
    return b[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
  }
};

/// Solves 4(i+j-1)B^{i+j-1}_m + (i+j)B^{i+j}_m = 4m sum_{a+b=m+1} B^i_a B^j_b
/// with B^i_i = 1, one offset m - i at a time (each level is linear).
/// Throws SeriesRecursionMismatch if a level is inconsistent or not unique.
BSeries b_recursion(int n);

/// Taylor coefficients of cosh(sqrt(t)/2) (2 sinh(sqrt(t)/2)/sqrt(t))^{2i-1}.
BSeries b_series(int n);

/// Both of the above; throws SeriesRecursionMismatch when they differ.
BSeries b_coefficients(int n);

/// Stage 1: z^j = y^j + p_j (j <= k), z^{k+i} from inverting
/// y^{k+i} = sum_a B^i_{i+a} z^{k+i+a}. Then eta(z) has R = P = 0, Q_m = 4m z^{k+m}.
struct ZChart {
  std::vector<Poly> p;                   // p_1..p_k on the y-chart
  std::vector<std::vector<Rational>> c;  // c[i][m]: z^{k+i} = sum_m c[i][m] y^{k+m}, m >= i
  BSeries b;
  CoordMap y_to_z;  // y variables on the z-chart, with the forward direction
  PolyMatrix eta;   // on the z-chart
  bool parametric = false;
};

/// p_j from the contravariant flatness equations
/// eta^{ai} d_i d_j t + gamma^{am}_j d_m t = 0 with t = y^j + (weighted-homogeneous
/// ansatz of degree d_j in y^1..y^{j-1}, E).
std::vector<Poly> solve_p_block(const FlatPencil& pencil, bool* parametric = nullptr);

ZChart build_z_chart(const FlatPencil& pencil);

/// Stage 2: fractional powers of z^l through the Laurent generator s = w^l,
/// z^l = s^{2(l-k)}, z^{k+1} = w^{k+1} s, z^j = w^j s^{2(j-k)}.
struct WChart {
  ChartPtr chart;
  CoordMap z_to_w;     // z variables on the w-chart
  PolyMatrix eta;      // contravariant, on the w-chart
  PolyMatrix eta_cov;  // covariant (Laurent in s)
  ChristoffelContra gamma;  // gamma^m_{ij} stored at (i, j, m)
};

ChartPtr make_w_chart(const RootSystemSpec& spec);
WChart build_w_chart(const RootSystemSpec& spec, const ZChart& z);

/// The expected eta(w) block form; for l - k = 1 the single block entry is
/// eta^{ll} = 1.
PolyMatrix w_block_form(const RootSystemSpec& spec, const ChartPtr& w);

/// The four structural properties of the w-chart Christoffel symbols; throws
/// PropertyViolation naming the first failure.
void check_gamma_w(const RootSystemSpec& spec, const WChart& w);

/// Stage 3.
struct FlatChart {
  ChartPtr chart;          // t-chart, weights d~, E of weight 1/k
  std::vector<Poly> h;     // h_{k+1}..h_{l-1} on the w-chart (index j-k-1)
  std::vector<Poly> t_of_w;  // t^1..t^{l+1}-coordinates as functions on the w-chart
  CoordMap w_to_t;         // w variables on the t-chart
  PolyMatrix eta;          // on the t-chart, constant
  bool parametric = false;
};

ChartPtr make_t_chart(const RootSystemSpec& spec);
FlatChart solve_flat_chart(const RootSystemSpec& spec, const WChart& w);

/// The constant flat metric pattern; l - k = 1 again has eta^{ll} = 1.
PolyMatrix eta_flat_pattern(const RootSystemSpec& spec, const ChartPtr& t);

/// The whole normalization y -> z -> w -> t for C_l.
struct FlatCoordinates {
  RootSystemSpec spec;
  FlatPencil pencil;
  ZChart z;
  WChart w;
  FlatChart t;
  CoordMap y_to_t;
};

FlatCoordinates build_flat_coordinates(const RootSystemSpec& spec);

}  // namespace orbitfm
