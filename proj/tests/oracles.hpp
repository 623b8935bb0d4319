#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <complex>
#include <array>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/special_functions/airy.hpp>

namespace oracle {

using cld = std::complex<long double>;
using cd = std::complex<double>;
using Table = std::map<std::int64_t, cld>;

inline Table table(std::initializer_list<std::pair<std::int64_t, cd>> entries) {
  Table t;
  for (const auto& [x, v] : entries) t[x] = cld(v.real(), v.imag());
  return t;
}

/// n - 1 sequential convolutions in extended precision.
inline Table naive_power(const Table& f, int n) {
  Table acc = f;
  for (int k = 1; k < n; ++k) {
    Table next;
    for (const auto& [x, a] : acc)
      for (const auto& [y, b] : f) next[x + y] += a * b;
    acc.swap(next);
  }
  return acc;
}

inline cd symbol(const Table& f, double xi) {
  cld s = 0;
  for (const auto& [x, v] : f) s += v * std::polar(1.0L, static_cast<long double>(x) * xi);
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

/// max |fhat| by a dense scan polished with golden-section search.
inline double dense_sup(const Table& f, int samples = 1 << 16) {
  const double pi = std::numbers::pi;
  double best = 0.0, arg = 0.0;
  const double h = 2.0 * pi / samples;
  for (int i = 0; i < samples; ++i) {
    const double xi = -pi + i * h;
    const double v = std::abs(symbol(f, xi));
    if (v > best) best = v, arg = xi;
  }
  double a = arg - h, b = arg + h;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (std::abs(symbol(f, c)) > std::abs(symbol(f, d))) b = d;
    else a = c;
  }
  return std::max(best, std::abs(symbol(f, 0.5 * (a + b))));
}

/// Remark-style moment constants about xi: alpha = E[X e]/fhat, beta_k = (i^k/k!)(alpha^k - E[X^k e]/fhat).
struct Moments {
  cd a;
  std::vector<cd> b;  // b[k] for k >= 2
};

inline Moments moments(const Table& f, double xi, int k_max) {
  std::vector<cld> mom(k_max + 1, 0);
  for (const auto& [x, v] : f) {
    const cld e = v * std::polar(1.0L, static_cast<long double>(x) * xi);
    long double p = 1;
    for (int k = 0; k <= k_max; ++k, p *= x) mom[k] += p * e;
  }
  Moments out;
  const cld a = mom[1] / mom[0];
  out.a = {static_cast<double>(a.real()), static_cast<double>(a.imag())};
  out.b.assign(k_max + 1, 0);
  cld ik = 1;
  long double fact = 1;
  for (int k = 1; k <= k_max; ++k) {
    ik *= cld(0, 1);
    fact *= k;
    if (k < 2) continue;
    const cld bk = ik / fact * (std::pow(a, k) - mom[k] / mom[0]);
    out.b[k] = {static_cast<double>(bk.real()), static_cast<double>(bk.imag())};
  }
  return out;
}

/// Proposition constants for phi(0) = a0, phi(1) = ap, phi(-1) = am with
/// ap am < 0 and 4|ap am| = a0 |ap + am|.
struct ThreePoint {
  double A, alpha, xi;
  cd beta;
};

inline ThreePoint threepoint(double a0, double ap, double am) {
  ThreePoint t;
  if (ap + am > 0) {
    t.A = a0 + ap + am;
    t.alpha = (ap - am) / t.A;
    t.xi = 0.0;
  } else {
    t.A = a0 - ap - am;
    t.alpha = (am - ap) / t.A;
    t.xi = std::numbers::pi;
  }
  t.beta = {0.0, (t.alpha - t.alpha * t.alpha * t.alpha) / 6.0};
  return t;
}

/// A random triple satisfying the constraint with |alpha| in [0.15, 0.85].
inline std::array<double, 3> random_threepoint(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.2, 3.0);
  std::bernoulli_distribution coin(0.5);
  while (true) {
    const double sign = coin(rng) ? 1.0 : -1.0;
    const double ap = sign * mag(rng), am = -sign * mag(rng);
    if (std::abs(ap + am) < 0.05) continue;
    const double a0 = 4.0 * std::abs(ap * am) / std::abs(ap + am);
    const auto t = threepoint(a0, ap, am);
    if (std::abs(t.alpha) < 0.15 || std::abs(t.alpha) > 0.85) continue;
    return {a0, ap, am};
  }
}

/// (4 pi beta)^{-1/2} e^{-x^2 / (4 beta)}.
inline cd heat_kernel(cd beta, double x) {
  return std::exp(-x * x / (4.0 * beta)) / std::sqrt(4.0 * std::numbers::pi * beta);
}

/// H_m^beta for Re beta > 0 and even m by the trapezoid rule on the real line,
/// which converges geometrically for this entire, rapidly decaying integrand.
inline cd real_line_trapezoid(int m, cd beta, double x, double U = 12.0, int n = 24000) {
  const double h = 2.0 * U / n;
  cd s = 0;
  for (int i = 0; i <= n; ++i) {
    const double u = -U + i * h;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    s += w * std::exp(cd(0, -x * u) - beta * std::pow(u, m));
  }
  return s * h / (2.0 * std::numbers::pi);
}

inline double airy(double x) { return boost::math::airy_ai(x); }

/// The two-packet closed form for the Airy example:
/// (5n)^{-1/3} i^x [(-1)^x Ai((x - 2n)/(5n)^{1/3}) + Ai(-(x + 2n)/(5n)^{1/3})].
inline cd airy_example(std::int64_t n, std::int64_t x) {
  const double s = std::cbrt(5.0 * static_cast<double>(n));
  static const cd powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cd ix = powers[((x % 4) + 4) % 4];
  const double sign = (x % 2 == 0) ? 1.0 : -1.0;
  const double dx = static_cast<double>(x), dn = static_cast<double>(n);
  return ix * (sign * airy((dx - 2.0 * dn) / s) + airy(-(dx + 2.0 * dn) / s)) / s;
}

/// n^{-1/2} (4 pi i / 8)^{-1/2} e^{-8 z^2 / (4 i)}.
inline cd ex1_weak(std::int64_t n, double z) {
  const cd i(0, 1);
  return std::exp(-8.0 * z * z / (4.0 * i)) / (std::sqrt(static_cast<double>(n)) * std::sqrt(4.0 * std::numbers::pi * i / 8.0));
}

/// Random function on [lo, lo + width] with sum |f| = mass.
inline Table random_table(std::mt19937_64& rng, int width, double mass) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> off(-3, 3);
  Table t;
  const int lo = off(rng);
  long double total = 0;
  for (int i = 0; i <= width; ++i) {
    const cld v(u(rng), u(rng));
    t[lo + i] = v;
    total += std::abs(v);
  }
  for (auto& [x, v] : t) v *= mass / total;
  return t;
}

}  // namespace oracle
