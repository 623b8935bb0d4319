#pragma once

// Local limit approximations of f^(n) and the residual reports built on them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convpow/lattice.hpp"
#include "convpow/symbol.hpp"

namespace convpow {

enum class LimitMode { strong, weak, supnorm, packet };

const char* to_string(LimitMode mode);

struct LimitRow {
  std::int64_t n = 0;
  std::vector<double> values;  // one per LimitReport::columns entry
};

struct LimitReport {
  LimitMode mode = LimitMode::strong;
  std::vector<std::string> columns;
  std::vector<LimitRow> rows;  // ascending n
  SymbolAnalysis analysis;
  std::optional<std::size_t> drift_index;          // weak
  std::optional<std::pair<double, double>> window;  // weak z-window
  std::optional<double> step;                      // weak z-step
  std::optional<double> packet_k;                  // packet
  /// Relative sup-norm gap between power_dft and power_direct at the largest n.
  std::optional<double> cross_check;
  std::optional<double> column_min;  // supnorm: extremes of s_n
  std::optional<double> column_max;

  /// Index of a column by name; throws if absent.
  std::size_t column(const std::string& name) const;
};

/// n^{1/m}, exact for perfect squares and cubes.
double nth_scale(std::int64_t n, int m);

/// sum over points of maximal order of
///   n^{-1/m} e^{-i x xi_q} (fhat(xi_q) / A)^n H_m^{beta_q}((x - alpha_q n) / n^{1/m}),
/// the approximation of A^{-n} f^(n)(x). Requires strong_hypothesis_holds(sa).
cplx strong_approx(const SymbolAnalysis& sa, std::int64_t n, std::int64_t x, double eps = 1e-10);

struct WeakPoint {
  std::int64_t x = 0;
  cplx value;
};

/// x = floor(alpha_q n + z n^{1/m}) and the group-q approximation of A^{-n} f^(n)(x).
WeakPoint weak_approx(const SymbolAnalysis& sa, std::int64_t n, std::size_t q, double z, double eps = 1e-10);

struct ResidualOptions {
  double eps = 1e-10;        // attractor accuracy
  bool cross_check = true;   // compare power_dft with power_direct at the largest n
  bool parallel = true;      // one task per n
};

/// mode strong: sup over supp f^(n) of n^{1/m} |A^{-n} f^(n)(x) - strong_approx|.
/// mode weak: sup over the z-grid of n^{1/m} |A^{-n} f^(n)(x(z)) - weak value|.
LimitReport residual_report(const LatticeFunction& f, std::vector<std::int64_t> n_list, LimitMode mode,
                            std::size_t q = 0, double z_lo = -3.0, double z_hi = 3.0, double z_step = 0.25,
                            const ResidualOptions& opts = {});

/// Weak-mode curve for one n: columns z, x, exact re/im, approximation re/im.
struct WeakCurve {
  std::vector<double> z;
  std::vector<std::int64_t> x;
  std::vector<cplx> exact;   // A^{-n} f^(n)(x)
  std::vector<cplx> approx;
};

WeakCurve weak_curve(const LatticeFunction& f, std::int64_t n, std::size_t q, double z_lo, double z_hi, double z_step,
                     double eps = 1e-10);

/// Strong-mode curve over the whole support of f^(n).
struct StrongCurve {
  std::vector<std::int64_t> x;
  std::vector<cplx> exact;   // A^{-n} f^(n)(x)
  std::vector<cplx> approx;
};

StrongCurve strong_curve(const LatticeFunction& f, std::int64_t n, double eps = 1e-10);

/// Columns log_sup_norm, sup_norm_normalized (A^{-n} ||f^(n)||), s_n = n^{1/m} A^{-n} ||f^(n)||.
LimitReport supnorm_scaling(const LatticeFunction& f, std::vector<std::int64_t> n_list, bool parallel = true);

struct PacketResult {
  bool ok = false;
  std::vector<std::int64_t> argmax;
  std::vector<std::pair<double, double>> packets;  // [alpha_q n - K n^{1/m}, alpha_q n + K n^{1/m}]
  double k_needed = 0.0;  // smallest K that would contain every argmax
};

PacketResult packet_check(const LatticeFunction& f, std::int64_t n, double K = 10.0);

/// packet_check per n: columns ok (0/1), k_needed, argmax_count.
LimitReport packet_report(const LatticeFunction& f, std::vector<std::int64_t> n_list, double K = 10.0);

}  // namespace convpow
