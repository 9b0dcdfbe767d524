#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitfm/flatcoords.hpp"

namespace orbitfm {

/// E = sum_a d~_a t^a d/dt^a + last * d/dt^{l+1}.
struct EulerField {
  std::vector<Rational> weights;  // d~_1..d~_l
  Rational last;                  // 1/k
};

/// L_E on functions: t^a -> d~_a t^a, E -> E/k, explicit t^{l+1} -> 1/k.
Poly euler_apply(const EulerField& e, const Poly& p);

/// Named pass/fail result with human-readable residual summaries.
struct CheckReport {
  std::string name;
  bool pass = true;
  std::vector<std::string> details;

  void fail(std::string why) {
    pass = false;
    if (details.size() < 20) details.push_back(std::move(why));
  }
};

struct FrobeniusStructure {
  RootSystemSpec spec;  // always C_l; see BIdentification for B_l
  FlatCoordinates flat;
  ChartPtr chart;  // t-chart
  PolyMatrix eta;      // contravariant, constant
  PolyMatrix eta_cov;  // covariant, constant
  EulerField euler;
  PolyMatrix g;              // intersection form on the t-chart
  ChristoffelContra gamma;   // Gamma^{ij}_m of g on the t-chart
  ChristoffelContra f3;      // F_{abc} stored at (a, b, c)
  Poly potential;
  int charge = 1;
};

/// g and Gamma moved along y -> t.
PolyMatrix g_in_t(const FlatCoordinates& fc);
ChristoffelContra gamma_in_t(const FlatCoordinates& fc, const PolyMatrix& g_t);

/// F_{abc} = eta_{ai} eta_{bj} c^{ij}_c with c^{ij}_m = Gamma^{ij}_m / d~_j, the
/// j = l+1 column filled by symmetry and the unity row. Throws
/// SymmetryViolation or IntegrabilityViolation.
ChristoffelContra third_derivatives(const RootSystemSpec& spec, const ChristoffelContra& gamma_t,
                                    const PolyMatrix& eta_cov);

/// The F whose third derivatives are `f3`, with all terms of degree <= 2 in
/// the flat coordinates dropped. Throws Inconsistent.
Poly integrate_potential(const ChristoffelContra& f3);

/// F = 1/2 (t^k)^2 t^{l+1} + 1/2 t^k sum_{i,j != k} eta_ij t^i t^j + G with G
/// free of t^k and t^{l+1}, homogeneous of degree 2. Throws ShapeMismatch.
void check_potential_shape(const FrobeniusStructure& s);

FrobeniusStructure build_frobenius(const RootSystemSpec& spec);

/// Associativity residuals; each failure names the quadruple.
CheckReport verify_wdvv(const FrobeniusStructure& s);
CheckReport verify_wdvv(const ChartPtr& chart, const Poly& potential, const PolyMatrix& eta);

/// Unity row, L_E F - 2F = (t^k)^2/(2k), charge-one scaling of eta, duality.
CheckReport verify_euler_unity(const FrobeniusStructure& s);

/// g^{ij} = L_E F^{ij} and Gamma^{ij}_m = d~_j dF^{ij}/dt^m, from F itself.
CheckReport verify_intersection(const FrobeniusStructure& s);

/// B_l realized through C_l: ybar^j = y^j (j < l), ybar^l = (y^l)^2,
/// ybar^{l+1} = y^{l+1} (k < l) or y^{l+1}/2 (k = l).
struct BIdentification {
  RootSystemSpec b_spec;
  FrobeniusStructure structure;
  CoordMap c_to_b;  // C_l y-chart variables on the B_l y-chart
};

CoordMap b_pullback_map(const RootSystemSpec& b_spec);

/// dybar/dy g_B (dybar/dy)^T equals g_C(ybar(y)), with g_B from the x-space
/// oracle. Throws OracleMismatch.
void check_b_pullback(const RootSystemSpec& b_spec, int max_rank = 4);

BIdentification b_to_c(const RootSystemSpec& b_spec, std::optional<int> oracle_max_rank = 3);

/// Data printed for the worked examples.
struct Fixture {
  std::string id;
  RootSystemSpec spec;
  /// z^j as polynomials in y (the parenthesized parts), j = 1..l.
  std::vector<std::string> z_of_y;
  /// w^j = z^j (z^l)^{r_j} for k < j < l, and w^l = (z^l)^{r_l}; index j-k-1.
  std::vector<Rational> w_exponents;
  /// t^j as polynomials in w, j = 1..l.
  std::vector<std::string> t_of_w;
  std::string potential;
  EulerField euler;
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& id);  // throws InvalidSpec

struct FixtureComparison {
  bool match = false;
  bool sign_flipped = false;  // matched only after t^m -> -t^m, k < m <= l
  std::vector<std::string> differences;
};

FixtureComparison compare_fixture(const FrobeniusStructure& s, const Fixture& f);

}  // namespace orbitfm
