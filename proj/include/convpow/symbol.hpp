#pragma once

// Location and local classification of the frequencies where |fhat| is maximal.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "convpow/lattice.hpp"

namespace convpow {

enum class PointType { type1, type2 };

/// A maximizing frequency xi0 together with the Taylor data of
/// Gamma(xi) = log(fhat(xi + xi0) / fhat(xi0)) = sum_l a_l xi^l.
struct MaxPoint {
  double xi = 0.0;            // in (-pi, pi]
  cplx symbol_value;          // fhat(xi), modulus A
  PointType point_type = PointType::type1;
  int order_m = 0;            // first l >= 2 with a_l != 0
  double drift_alpha = 0.0;   // a_1 = i alpha
  cplx beta;                  // -a_m
  std::optional<int> k;       // type 2: first l with Re a_l != 0
  std::optional<double> gamma;  // type 2: -Re a_k
  std::vector<cplx> taylor;   // a_1 .. a_L
};

struct SymbolAnalysis {
  double A = 0.0;
  std::vector<MaxPoint> omega;  // ascending xi
  int m_phi = 0;
  std::vector<std::size_t> max_order_indices;
  /// Partition of max_order_indices by drift; groups in ascending alpha,
  /// members in ascending xi.
  std::vector<std::vector<std::size_t>> drift_groups;
  std::vector<std::string> warnings;
};

/// Every threshold used by the analysis. Defaults sit about two orders of
/// magnitude above the rounding noise of the finite sums involved.
struct SymbolTolerances {
  double max_membership = 1e-10;  // |fhat| >= A (1 - tol) puts a point in Omega
  double coefficient = 1e-9;      // a_l counts as nonzero above tol * sum|f||x|^l / (l! A)
  double drift_cluster = 1e-8;
  double dedup = 1e-8;
  double cross_check = 1e-7;      // allowed disagreement with the moment formulas
  int samples_per_width = 8192;
  int max_order = 64;
};

/// c(k) = sum_x f(x) conj(f(x - k)); its symbol is |fhat|^2.
LatticeFunction autocorrelation(const LatticeFunction& f);

struct SupResult {
  double A = 0.0;
  std::vector<double> critical_points;  // refined local maxima of |fhat| in (-pi, pi]
};

SupResult find_sup(const LatticeFunction& f, const SymbolTolerances& tol = {});

struct MaxPointSearch {
  double A = 0.0;
  std::vector<double> points;  // ascending, in (-pi, pi]
  std::vector<std::string> warnings;
};

MaxPointSearch find_max_points(const LatticeFunction& f, const SymbolTolerances& tol = {});

/// a_1 .. a_L of log(fhat(xi + xi0) / fhat(xi0)) from exact symbol derivatives
/// and the logarithm-series recursion.
std::vector<cplx> gamma_series(const LatticeFunction& f, double xi0, int L);

MaxPoint classify_point(const LatticeFunction& f, double xi0, const SymbolTolerances& tol = {});

struct MomentConstants {
  cplx a;
  std::vector<cplx> b;  // b[0] is b_2
  cplx b_at(int k) const { return b.at(static_cast<std::size_t>(k - 2)); }
};

/// a(xi) = E[X e^{i xi X}] / fhat(xi) and
/// b_k(xi) = (i^k / k!) (a^k - E[X^k e^{i xi X}] / fhat(xi)), k = 2..k_max.
MomentConstants moment_constants(const LatticeFunction& f, double xi, int k_max);

SymbolAnalysis analyze(const LatticeFunction& f, const SymbolTolerances& tol = {});

/// m_phi > 2, or every point of maximal order is of type 1.
bool strong_hypothesis_holds(const SymbolAnalysis& sa);

/// Maps a real angle into (-pi, pi].
double wrap_angle(double xi);

/// Distance on the circle R / 2 pi Z.
double circular_distance(double a, double b);

}  // namespace convpow
