#pragma once

// The attractor kernels H_m^beta(x) = (1/2pi) int_R e^{-i x u - beta u^m} du.

#include <cstddef>
#include <string>
#include <vector>

#include "convpow/lattice.hpp"

namespace convpow {

/// (m, beta) with m >= 2, beta != 0, Re beta >= 0, and m even when Re beta > 0.
struct AttractorSpec {
  int m = 2;
  cplx beta{1.0, 0.0};
};

/// Throws invalid_argument when the integral is not defined for spec.
void validate(const AttractorSpec& spec);

enum class QuadratureScheme { real_line, rotated_rays, closed_form };

/// Audit trail of one evaluation: where the integral was truncated and the
/// certified bound on what was dropped (already divided by 2 pi).
struct QuadratureCert {
  double truncation = 0.0;
  double tail_bound = 0.0;
  QuadratureScheme scheme = QuadratureScheme::closed_form;
  int panels = 0;
};

struct AttractorValue {
  cplx value;
  QuadratureCert cert;
};

enum class SchemeChoice { automatic, real_line, rotated_rays };

struct AttractorOptions {
  /// automatic: closed form for m = 2, real line for Re beta > 0, rotated rays otherwise.
  SchemeChoice scheme = SchemeChoice::automatic;
  int max_panels = 1 << 21;
};

/// H_m^beta(x) to absolute accuracy eps (eps >= 1e-13).
AttractorValue attractor_eval(const AttractorSpec& spec, double x, double eps = 1e-10,
                              const AttractorOptions& opts = {});

/// H at z0, z0 + h, ..., z0 + (count-1) h. For m = 3 with imaginary beta the
/// oscillatory tail is marched with a Taylor integrator of the kernel's ODE
/// H'' = (i / (3 beta)) x H; other kernels are evaluated pointwise.
std::vector<cplx> attractor_grid(const AttractorSpec& spec, double z0, double h, std::size_t count,
                                 double eps = 1e-10);

/// Ai(x) for |x| <= 40 from the Maclaurin pair (|x| <= 8) or the classical
/// asymptotic expansions. Independent of attractor_eval.
double airy_oracle(double x);

struct Rescaled {
  AttractorSpec spec;  // (m, s^m beta)
  double scale = 1.0;  // s
  std::string statement;
};

/// Substitution u -> s u: H_m^beta(x) = s H_m^{s^m beta}(s x).
Rescaled rescale(const AttractorSpec& spec, double s);

/// A / |x|^{(m-2)/(2(m-1))} + B / |x|, the decay profile of imaginary-beta kernels.
double decay_envelope(int m, double x, double A, double B);

/// Exponent (m-2)/(2(m-1)) of decay_envelope.
double decay_exponent(int m);

struct VdcBounds {
  double linear = 0.0;     // 4 / lambda, for |f'| >= lambda with f' monotone
  double quadratic = 0.0;  // 8 / sqrt(rho), for |f''| >= rho
};

VdcBounds vdc_bounds(double lambda, double rho);

}  // namespace convpow
