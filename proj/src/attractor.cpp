#include "convpow/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>

#include "convpow/error.hpp"
#include "quadrature.hpp"

namespace convpow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Largest exponent the integrand may reach along a ray; e^3 costs about one
// digit to cancellation.
constexpr double kMaxGrowth = 3.0;

struct Integral {
  cplx value;
  int panels = 0;
};

template <class F>
Integral integrate_adaptive(F&& f, double upper, int initial_panels, double tol, int max_panels) {
  int panels = std::max(2, initial_panels);
  cplx prev = detail::integrate_panels(f, 0.0, upper, panels);
  for (;;) {
    if (2 * panels > max_panels)
      fail(ErrorKind::numerical, "attractor quadrature did not converge within " + std::to_string(max_panels) +
                                     " panels");
    panels *= 2;
    const cplx next = detail::integrate_panels(f, 0.0, upper, panels);
    if (std::abs(next - prev) < tol) return {next, panels};
    prev = next;
  }
}

int initial_panels(double phase) { return std::max(4, static_cast<int>(std::ceil(phase / 3.0))); }

// Tail of the real-line integral over [U, inf) for one half-line, with
// amplitude g(u) = e^{-b u^m} and phase f(u) = -s x u - Im(beta) u^m.
double real_line_tail(const AttractorSpec& spec, double x, double U, int side) {
  const int m = spec.m;
  const double b = spec.beta.real();
  const double tau = spec.beta.imag();
  const double amp = std::exp(-b * std::pow(U, m));
  double best = amp / (m * b * std::pow(U, m - 1));

  double lambda = 0.0;
  const double sx = side * x;
  if (tau == 0.0) {
    lambda = std::abs(sx);
  } else {
    // f'(u) = -sx - m tau u^{m-1} is monotone on [U, inf); its zero, if any:
    const double ratio = -sx / (m * tau);
    const bool zero_beyond = ratio > 0 && std::pow(ratio, 1.0 / (m - 1)) >= U;
    if (!zero_beyond) lambda = std::abs(-sx - m * tau * std::pow(U, m - 1));
  }
  const double rho = m >= 2 && tau != 0.0 ? m * (m - 1) * std::abs(tau) * std::pow(U, m - 2) : 0.0;
  if (lambda > 0.0 || rho > 0.0) {
    const auto vdc = vdc_bounds(lambda > 0 ? lambda : 1.0, rho > 0 ? rho : 1.0);
    double osc = std::numeric_limits<double>::infinity();
    if (lambda > 0.0) osc = std::min(osc, vdc.linear);
    if (rho > 0.0) osc = std::min(osc, vdc.quadratic);
    // g is positive and decreasing, so ||g||_inf + ||g'||_1 = 2 g(U).
    best = std::min(best, 2.0 * amp * osc);
  }
  return best;
}

AttractorValue eval_real_line(const AttractorSpec& spec, double x, double eps, const AttractorOptions& opts) {
  const int m = spec.m;
  const double b = spec.beta.real();
  const auto tail = [&](double U) {
    return (real_line_tail(spec, x, U, +1) + real_line_tail(spec, x, U, -1)) / kTwoPi;
  };
  const double target = eps / 4.0;
  double U = std::pow(std::max(1.0, std::log(1.0 / eps)) / b, 1.0 / m);
  while (tail(U) > target) U *= 1.05;
  while (U > 1e-3 && tail(U * 0.97) <= target) U *= 0.97;

  const cplx beta = spec.beta;
  const auto integrand = [&](double u) { return std::cos(x * u) * std::exp(-beta * std::pow(u, m)); };
  const double phase = std::abs(x) * U + std::abs(beta) * std::pow(U, m);
  const auto r = integrate_adaptive(integrand, U, initial_panels(phase), eps / 4.0 * kPi, opts.max_panels);
  return {r.value / kPi, {U, tail(U), QuadratureScheme::real_line, r.panels}};
}

// One half-line u = d e^{i phi} t, t in [0, inf), rotated into the sector where
// e^{-beta u^m} decays.
struct Ray {
  int d = 1;
  double phi = 0.0;
  double psi = 0.0;     // arg(beta d^m)
  double decay = 0.0;   // |beta| cos(psi + m phi)
  double growth = 0.0;  // x d sin(phi); positive means e^{-i x u} grows along the ray
  double U = 0.0;
};

Ray make_ray(const AttractorSpec& spec, double x, int d) {
  const int m = spec.m;
  const cplx bd = (d < 0 && m % 2 != 0) ? -spec.beta : spec.beta;
  Ray ray;
  ray.d = d;
  ray.psi = std::arg(bd);
  if (std::abs(ray.psi) > kPi / 2 + 1e-12)
    fail(ErrorKind::invalid_argument, "e^{-beta u^m} grows along the real axis; no convergent ray");
  const double mag = std::abs(spec.beta);
  const double full = -ray.psi / m;
  const auto decay = [&](double phi) { return mag * std::cos(ray.psi + m * phi); };
  const auto growth = [&](double phi) { return x * d * std::sin(phi); };
  const auto peak = [&](double phi) {
    const double g = growth(phi);
    if (g <= 0.0) return 0.0;
    const double dc = decay(phi);
    if (dc <= 0.0) return std::numeric_limits<double>::infinity();
    const double tstar = std::pow(g / (m * dc), 1.0 / (m - 1));
    return (m - 1.0) / m * g * tstar;
  };
  double phi = full;
  if (peak(full) > kMaxGrowth) {
    // Shallower rotation: less decay but the e^{-i x u} factor stays bounded.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (peak(mid * full) > kMaxGrowth) hi = mid; else lo = mid;
    }
    phi = lo * full;
  }
  ray.phi = phi;
  ray.decay = decay(phi);
  ray.growth = growth(phi);
  if (!(ray.decay > 0.0))
    fail(ErrorKind::invalid_argument, "kernel does not decay along any admissible ray");
  return ray;
}

// Bound on int_U^inf t^j e^{-(D t^m - G t)} dt via convexity of the exponent.
double ray_tail(const Ray& ray, int m, int j, double U) {
  const double F = ray.decay * std::pow(U, m) - ray.growth * U - j * std::log(U);
  const double dF = m * ray.decay * std::pow(U, m - 1) - ray.growth - j / U;
  if (!(dF > 0.0)) return std::numeric_limits<double>::infinity();
  return std::exp(-F) / dF;
}

double ray_truncation(const Ray& ray, int m, int j, double target) {
  const auto ok = [&](double U) { return ray_tail(ray, m, j, U) <= target; };
  double U = 0.25;
  while (!ok(U)) {
    U *= 1.1;
    if (U > 1e8) fail(ErrorKind::numerical, "could not certify a truncation point for the ray integral");
  }
  double lo = U / 1.1, hi = U;
  if (ok(lo)) return lo;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid)) hi = mid; else lo = mid;
  }
  return hi;
}

// (1/2pi) int_R (-i u)^j e^{-i x u - beta u^m} du along two rotated rays.
AttractorValue eval_rays(const AttractorSpec& spec, double x, double eps, int j, const AttractorOptions& opts) {
  const int m = spec.m;
  const double mag = std::abs(spec.beta);
  cplx total{};
  double tail = 0.0;
  double reach = 0.0;
  int panels = 0;
  for (int d : {+1, -1}) {
    auto ray = make_ray(spec, x, d);
    ray.U = ray_truncation(ray, m, j, eps / 8.0 * kTwoPi);
    tail += ray_tail(ray, m, j, ray.U) / kTwoPi;
    reach = std::max(reach, ray.U);
    const cplx w = std::polar(1.0, ray.phi);
    const cplx coeff = std::polar(mag, ray.psi + m * ray.phi);
    const auto integrand = [&](double t) {
      const cplx u = static_cast<double>(ray.d) * w * t;
      cplx v = w * std::exp(cplx{0.0, -x} * u - coeff * std::pow(t, m));
      if (j == 1) v *= cplx{0.0, -1.0} * u;
      return v;
    };
    const double phase = std::abs(x) * ray.U + mag * std::pow(ray.U, m);
    const auto r = integrate_adaptive(integrand, ray.U, initial_panels(phase), eps / 8.0 * kTwoPi, opts.max_panels);
    total += r.value;
    panels += r.panels;
  }
  return {total / kTwoPi, {reach, tail, QuadratureScheme::rotated_rays, panels}};
}

void check_eps(double eps) {
  if (!(eps >= 1e-13))
    fail(ErrorKind::invalid_argument, "requested accuracy below the double-precision floor of 1e-13");
}

// One Taylor step of y'' = c x y from x0 by delta, returning (y, y').
std::pair<cplx, cplx> airy_ode_step(cplx c, double x0, double delta, cplx y, cplx dy) {
  // s_k = y_k delta^k with (k+1)(k+2) y_{k+2} = c (x0 y_k + y_{k-1}).
  cplx s_prev{};  // s_{k-1}
  cplx s0 = y, s1 = dy * delta;
  cplx value = s0 + s1;
  cplx deriv = s1;  // sum k s_k, divided by delta at the end
  const cplx cd2 = c * delta * delta;
  // s_{k+2} depends on s_k and s_{k-1}; keep a three-term window.
  cplx sk_1 = s_prev, sk = s0, sk1 = s1;
  int small_run = 0;
  for (int k = 0; k < 400; ++k) {
    const cplx sk2 = cd2 * (x0 * sk + delta * sk_1) / static_cast<double>((k + 1) * (k + 2));
    value += sk2;
    deriv += static_cast<double>(k + 2) * sk2;
    const double size = std::abs(sk2) * (k + 2);
    if (size <= 1e-18 * (std::abs(value) + std::abs(deriv))) {
      if (++small_run >= 3) break;
    } else {
      small_run = 0;
    }
    sk_1 = sk;
    sk = sk1;
    sk1 = sk2;
  }
  return {value, deriv / delta};
}

}  // namespace

void validate(const AttractorSpec& spec) {
  if (spec.m < 2) fail(ErrorKind::invalid_argument, "attractor order m must be >= 2");
  if (spec.beta == cplx{}) fail(ErrorKind::invalid_argument, "attractor beta must be nonzero");
  if (spec.beta.real() < 0.0) fail(ErrorKind::invalid_argument, "attractor beta must have Re(beta) >= 0");
  if (spec.beta.real() > 0.0 && spec.m % 2 != 0)
    fail(ErrorKind::invalid_argument, "Re(beta) > 0 requires even m");
  if (!std::isfinite(spec.beta.real()) || !std::isfinite(spec.beta.imag()))
    fail(ErrorKind::invalid_argument, "attractor beta must be finite");
}

AttractorValue attractor_eval(const AttractorSpec& spec, double x, double eps, const AttractorOptions& opts) {
  validate(spec);
  check_eps(eps);
  if (!std::isfinite(x)) fail(ErrorKind::invalid_argument, "attractor argument must be finite");

  switch (opts.scheme) {
    case SchemeChoice::real_line:
      if (!(spec.beta.real() > 0.0))
        fail(ErrorKind::invalid_argument, "real-line quadrature requires Re(beta) > 0");
      return eval_real_line(spec, x, eps, opts);
    case SchemeChoice::rotated_rays:
      return eval_rays(spec, x, eps, 0, opts);
    case SchemeChoice::automatic:
      break;
  }
  if (spec.m == 2) {
    // Principal branch; continuous up to Re(beta) = 0.
    const cplx v = std::exp(-x * x / (4.0 * spec.beta)) / std::sqrt(4.0 * kPi * spec.beta);
    return {v, {0.0, 0.0, QuadratureScheme::closed_form, 0}};
  }
  if (spec.beta.real() > 0.0) return eval_real_line(spec, x, eps, opts);
  return eval_rays(spec, x, eps, 0, opts);
}

std::vector<cplx> attractor_grid(const AttractorSpec& spec, double z0, double h, std::size_t count, double eps) {
  validate(spec);
  check_eps(eps);
  if (!(h > 0.0)) fail(ErrorKind::invalid_argument, "grid step must be positive");
  std::vector<cplx> out(count);
  const auto z_at = [&](std::size_t i) { return z0 + static_cast<double>(i) * h; };
  if (!(spec.m == 3 && spec.beta.real() == 0.0)) {
    for (std::size_t i = 0; i < count; ++i) out[i] = attractor_eval(spec, z_at(i), eps).value;
    return out;
  }

  // H'' = c x H with c = i / (3 beta) = 1 / (3 tau); oscillatory where c x < 0.
  const double tau = spec.beta.imag();
  const double c = 1.0 / (3.0 * tau);
  const int osc = c > 0 ? -1 : +1;
  const double airy_scale = std::cbrt(std::abs(c));
  const auto marched = [&](std::size_t i) { return osc * z_at(i) * airy_scale > 6.0; };

  // On the decaying side H is a rescaled Ai, bounded by exp(-zeta) / (2 sqrt(pi) y^{1/4}).
  const auto negligible = [&](std::size_t i) {
    const double y = -osc * z_at(i) * airy_scale;
    if (y < 6.0) return false;
    const double zeta = 2.0 / 3.0 * y * std::sqrt(y);
    return airy_scale * std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(y, 0.25)) < 1e-3 * eps;
  };
  for (std::size_t i = 0; i < count; ++i) {
    if (marched(i)) continue;
    out[i] = negligible(i) ? cplx{} : attractor_eval(spec, z_at(i), eps).value;
  }

  // The marched indices form one contiguous run at the oscillatory end.
  std::vector<std::size_t> run;
  if (osc > 0) {
    for (std::size_t i = 0; i < count; ++i)
      if (marched(i)) run.push_back(i);
  } else {
    for (std::size_t i = count; i-- > 0;)
      if (marched(i)) run.push_back(i);
  }
  if (run.empty()) return out;
  const double start = z_at(run.front());
  const AttractorOptions opts;
  cplx y = eval_rays(spec, start, eps / 10.0 < 1e-13 ? 1e-13 : eps / 10.0, 0, opts).value;
  cplx dy = eval_rays(spec, start, eps / 10.0 < 1e-13 ? 1e-13 : eps / 10.0, 1, opts).value;
  out[run.front()] = y;
  for (std::size_t r = 1; r < run.size(); ++r) {
    const double from = z_at(run[r - 1]);
    const double to = z_at(run[r]);
    std::tie(y, dy) = airy_ode_step(cplx{c, 0.0}, from, to - from, y, dy);
    out[run[r]] = y;
  }
  return out;
}

Rescaled rescale(const AttractorSpec& spec, double s) {
  validate(spec);
  if (!(s > 0.0)) fail(ErrorKind::invalid_argument, "rescale factor must be positive");
  Rescaled r;
  r.scale = s;
  r.spec = {spec.m, spec.beta * std::pow(s, spec.m)};
  std::ostringstream os;
  os.precision(17);
  os << "H_" << spec.m << "^(" << spec.beta.real() << (spec.beta.imag() < 0 ? "" : "+") << spec.beta.imag()
     << "i)(x) = " << s << " * H_" << r.spec.m << "^(" << r.spec.beta.real() << (r.spec.beta.imag() < 0 ? "" : "+")
     << r.spec.beta.imag() << "i)(" << s << " * x)";
  r.statement = os.str();
  return r;
}

double decay_exponent(int m) { return (m - 2.0) / (2.0 * (m - 1.0)); }

double decay_envelope(int m, double x, double A, double B) {
  if (m < 3) fail(ErrorKind::invalid_argument, "decay envelope requires m >= 3");
  if (x == 0.0) fail(ErrorKind::invalid_argument, "decay envelope is undefined at x = 0");
  const double ax = std::abs(x);
  return A / std::pow(ax, decay_exponent(m)) + B / ax;
}

VdcBounds vdc_bounds(double lambda, double rho) {
  if (!(lambda > 0.0) || !(rho > 0.0)) fail(ErrorKind::invalid_argument, "van der Corput bounds need lambda, rho > 0");
  return {4.0 / lambda, 8.0 / std::sqrt(rho)};
}

}  // namespace convpow
