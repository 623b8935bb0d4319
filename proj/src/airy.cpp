#include <cmath>
#include <limits>
#include <numbers>

#include "convpow/attractor.hpp"
#include "convpow/error.hpp"

namespace convpow {

namespace {

// Ai(0) and -Ai'(0).
constexpr long double kAi0 = 0.355028053887817239260063186004183177L;
constexpr long double kDAi0 = 0.258819403792806798405183560189203963L;

// Extended precision absorbs the cancellation between the two series, whose
// terms reach e^{(2/3)|x|^{3/2}} ~ 3e6 at |x| = 8.
double maclaurin(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;
  long double f = 1.0L, g = x;
  long double tf = 1.0L, tg = x;
  for (int k = 1; k < 200; ++k) {
    tf *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
    tg *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += tf;
    g += tg;
    if (std::fabs(tf) + std::fabs(tg) < 1e-30L * (std::fabs(f) + std::fabs(g))) break;
  }
  return static_cast<double>(kAi0 * f - kDAi0 * g);
}

// Coefficients u_k of the large-argument expansions, summed until the terms
// stop shrinking.
struct AsymptoticSums {
  double even = 0.0;        // sum (-1)^k u_{2k} / zeta^{2k}
  double odd = 0.0;         // sum (-1)^k u_{2k+1} / zeta^{2k+1}
  double alternating = 0.0; // sum (-1)^k u_k / zeta^k
};

AsymptoticSums asymptotic_sums(double zeta) {
  AsymptoticSums s;
  double u = 1.0;
  double term = 1.0;  // u_k / zeta^k
  double last = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
      term = u / std::pow(zeta, k);
    }
    if (std::abs(term) > last) break;
    last = std::abs(term);
    s.alternating += (k % 2 == 0 ? 1.0 : -1.0) * term;
    if (k % 2 == 0) s.even += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    else s.odd += (((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    if (std::abs(term) < 1e-18) break;
  }
  return s;
}

}  // namespace

double airy_oracle(double x) {
  if (!(std::abs(x) <= 40.0)) fail(ErrorKind::invalid_argument, "airy_oracle is limited to |x| <= 40");
  if (std::abs(x) <= 8.0) return maclaurin(x);
  const double z = std::abs(x);
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  const auto s = asymptotic_sums(zeta);
  const double root_pi = std::sqrt(std::numbers::pi);
  if (x > 0) return std::exp(-zeta) / (2.0 * root_pi * std::pow(z, 0.25)) * s.alternating;
  const double theta = zeta + std::numbers::pi / 4.0;
  return (std::sin(theta) * s.even - std::cos(theta) * s.odd) / (root_pi * std::pow(z, 0.25));
}

}  // namespace convpow
