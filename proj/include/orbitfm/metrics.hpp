#pragma once

#include <vector>

#include "orbitfm/orbitspace.hpp"
#include "orbitfm/polymatrix.hpp"
#include "orbitfm/rootdata.hpp"

namespace orbitfm {

/// Contravariant Christoffel symbols Gamma^{ij}_m, indices over the chart
/// coordinates.
class ChristoffelContra {
 public:
  ChristoffelContra() = default;
  ChristoffelContra(ChartPtr chart, std::size_t n);

  const ChartPtr& chart() const { return chart_; }
  std::size_t size() const { return n_; }
  Poly& operator()(std::size_t i, std::size_t j, std::size_t m) { return data_[(i * n_ + j) * n_ + m]; }
  const Poly& operator()(std::size_t i, std::size_t j, std::size_t m) const {
    return data_[(i * n_ + j) * n_ + m];
  }
  friend bool operator==(const ChristoffelContra&, const ChristoffelContra&);

 private:
  ChartPtr chart_;
  std::size_t n_ = 0;
  std::vector<Poly> data_;
};

/// g^{ij}(theta) from the generating function: coefficient of u^{l-i} v^{l-j} in
/// [(k-l)P(u)P(v)(u-v) + (u^2+4u)P'(u)P(v) - (v^2+4v)P(u)P'(v)]/(u-v).
PolyMatrix g_theta(const RootSystemSpec& spec);

/// Gamma^{ij}_m(theta) from the second generating function (divisions by
/// (u-v) and (u-v)^2 are exact).
ChristoffelContra gamma_theta(const RootSystemSpec& spec);

/// Contravariant tensors moved along a CoordMap using only the source
/// coordinates as functions on the target chart.
struct Transport {
  CoordMap map;
  PolyMatrix k;  // d s^p / d T^c
  PolyMatrix j;  // d T^a / d s^p
};

Transport make_transport(const CoordMap& map);

PolyMatrix transform_form(const PolyMatrix& form, const Transport& tr);

/// `g_target` is the already transported metric.
ChristoffelContra transform_christoffel(const PolyMatrix& g_target, const ChristoffelContra& gamma,
                                        const Transport& tr);

/// Entrywise derivative along a chart coordinate.
PolyMatrix diff_coord(const PolyMatrix& m, std::size_t coord);
ChristoffelContra diff_coord(const ChristoffelContra& g, std::size_t coord);

/// Weighted homogeneity of the entries with the expected degrees
/// deg g^{ij} = w_i + w_j (and w_i + w_j - w_m for Gamma), w indexed by
/// chart coordinate. Zero entries always pass.
bool degrees_match(const PolyMatrix& g, const std::vector<Rational>& w);
bool degrees_match(const ChristoffelContra& g, const std::vector<Rational>& w);

/// The pencil on the y-chart of C_l: g, eta = dg/dy^k and their
/// Christoffel symbols.
struct FlatPencil {
  RootSystemSpec spec;
  ChartPtr chart;
  PolyMatrix g;
  PolyMatrix eta;
  ChristoffelContra gamma_g;
  ChristoffelContra gamma_eta;
};

FlatPencil build_flat_pencil(const RootSystemSpec& spec);

/// The matrix with entries R_j, P_j, Q_m, k, 1 (C_l, y-chart).
PolyMatrix eta_closed_form(const RootSystemSpec& spec);

/// (-1)^l k^{k-1} 4^{l-k} (l-k)^{l-k} (y^l)^{l-k}, the sign as usually stated.
Poly det_eta_closed_form(const RootSystemSpec& spec);

/// The same magnitude with the sign of the permutation pairing the nonzero
/// anti-diagonal entries: (-1)^{1 + floor((k-1)/2) + floor((l-k)/2)}.
Poly det_eta_permutation_form(const RootSystemSpec& spec);

struct DetEtaReport {
  Poly det;
  Poly stated;
  Poly permutation;
  bool matches_stated = false;
  bool matches_permutation = false;
};

/// Throws ClosedFormMismatch when eta differs from the closed form.
void check_eta_closed_form(const FlatPencil& pencil);

/// Throws DetMismatch unless det eta equals the closed form up to sign.
DetEtaReport det_eta_check(const FlatPencil& pencil);

/// g and Gamma are at most linear in y^k.
bool linearity_check(const PolyMatrix& g, const ChristoffelContra& gamma, std::size_t k_coord);

}  // namespace orbitfm
