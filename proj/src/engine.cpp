#include "convpow/engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "convpow/error.hpp"
#include "fft.hpp"
#include "quadrature.hpp"

namespace convpow {

namespace {

void require_positive(std::int64_t n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "power n must be >= 1 (got " + std::to_string(n) + ")");
}

// Panels for a composite 20-point rule over one period of a trigonometric
// polynomial of the given degree: about four radians of phase per panel.
int period_panels(double degree) { return std::max(8, static_cast<int>(std::ceil(degree * std::numbers::pi / 2.0)) + 4); }

}  // namespace

cplx polar_power(cplx z, std::int64_t n) {
  const double r = std::abs(z);
  if (r == 0.0) return {};
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double phase = static_cast<long double>(n) * static_cast<long double>(std::arg(z));
  phase = std::fmod(phase, two_pi);
  const double mag = std::exp(static_cast<double>(n) * std::log(r));
  return std::polar(mag, static_cast<double>(phase));
}

PowerResult power_direct(const LatticeFunction& f, std::int64_t n) {
  require_positive(n);
  LatticeFunction result;
  bool have = false;
  LatticeFunction base = f;
  std::int64_t e = n;
  while (e > 0) {
    if (e & 1) {
      result = have ? convolve(result, base) : base;
      have = true;
    }
    e >>= 1;
    if (e > 0) base = convolve(base, base);
  }
  return {n, std::move(result), PowerMethod::direct};
}

std::size_t dft_length(const LatticeFunction& f, std::int64_t n) {
  require_positive(n);
  const auto needed = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(f.width()) + 1;
  return std::bit_ceil(needed);
}

PowerResult power_dft(const LatticeFunction& f, std::int64_t n, const DftOptions& opts) {
  require_positive(n);
  if (f.is_zero()) return {n, {}, PowerMethod::dft};
  const std::size_t len = dft_length(f, n);
  if (len > opts.max_length)
    fail(ErrorKind::numerical, "DFT length " + std::to_string(len) + " exceeds the memory cap of " +
                                   std::to_string(opts.max_length));
  std::vector<cplx> buf(len);
  std::copy(f.values().begin(), f.values().end(), buf.begin());
  detail::fft(buf, false);
  for (auto& z : buf) z = polar_power(z, n);
  detail::fft(buf, true);
  // The support of f^(n), shifted to start at 0, has n*width+1 <= len points,
  // so the circular result contains it without wraparound.
  const auto count = static_cast<std::size_t>(n * f.width() + 1);
  buf.resize(count);
  return {n, LatticeFunction(n * f.min_support(), std::move(buf)), PowerMethod::dft};
}

SupNorm sup_norm(const LatticeFunction& f) {
  SupNorm out;
  const auto v = f.values();
  for (auto z : v) out.value = std::max(out.value, std::abs(z));
  if (out.value == 0.0) return out;
  const double cut = out.value * (1.0 - 1e-12);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) >= cut) out.argmax.push_back(f.offset() + static_cast<std::int64_t>(i));
  return out;
}

double parseval_gap(const LatticeFunction& f, std::int64_t n) {
  require_positive(n);
  if (f.is_zero()) return 0.0;
  const auto power = power_dft(f, n).result;
  double lattice_side = 0.0;
  for (auto z : power.values()) lattice_side += std::norm(z);

  const double degree = 2.0 * static_cast<double>(n) * static_cast<double>(f.width());
  const auto integrand = [&](double xi) {
    const double r = std::abs(evaluate_symbol(f, xi));
    return r == 0.0 ? 0.0 : std::exp(2.0 * static_cast<double>(n) * std::log(r));
  };
  const double integral =
      detail::integrate_panels(integrand, -std::numbers::pi, std::numbers::pi, period_panels(degree)) /
      (2.0 * std::numbers::pi);
  return std::abs(lattice_side - integral);
}

cplx evaluate_extension(const LatticeFunction& f, std::int64_t n, double x) {
  require_positive(n);
  if (f.is_zero()) return {};
  const double degree = static_cast<double>(n) * static_cast<double>(f.width()) +
                        std::abs(x - static_cast<double>(n) * f.min_support()) + 1.0;
  // Factor e^{i n min xi} out of fhat^n so the remaining phase is bounded by the degree above.
  const auto reduced = f.shifted(-f.min_support());
  const double center = x - static_cast<double>(n * f.min_support());
  const auto integrand = [&](double xi) {
    return std::polar(1.0, -center * xi) * polar_power(evaluate_symbol(reduced, xi), n);
  };
  return detail::integrate_panels(integrand, -std::numbers::pi, std::numbers::pi, period_panels(degree)) /
         (2.0 * std::numbers::pi);
}

}  // namespace convpow
