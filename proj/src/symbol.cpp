#include "convpow/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "convpow/error.hpp"

namespace convpow {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Derivatives of g = |fhat|^2 through its autocorrelation coefficients. g is
// real, so only the real part of the exact sum is kept.
struct SquaredModulus {
  LatticeFunction c;

  double derivative(double xi, int j) const { return symbol_derivative(c, xi, j).real(); }

  // sum |c_t| |t|^j, the natural size of the j-th derivative.
  double scale(int j) const {
    double s = 0.0;
    for (const auto& e : c.entries()) s += std::abs(e.value) * std::pow(std::abs(static_cast<double>(e.x)), j);
    return s;
  }
};

// Root of g' inside (a, b] where g'(a) > 0 >= g'(b): Newton steps kept inside
// the bracket, bisection otherwise.
double refine_bracket(const SquaredModulus& g, double a, double b, double db) {
  if (db == 0.0) return b;
  const double resid_scale = g.scale(1);
  double x = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    const double d1 = g.derivative(x, 1);
    if (std::abs(d1) < 1e-13 * resid_scale || b - a < 1e-15) return x;
    if (d1 > 0) a = x; else b = x;
    const double d2 = g.derivative(x, 2);
    double next = d2 != 0.0 ? x - d1 / d2 : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    x = next;
  }
  return x;
}

// A maximum of g where g - g(xi0) ~ -C xi^k has a zero of g' of multiplicity
// k - 1, which floating point can only locate to about eps^{1/(k-1)}. The
// (k-1)-th derivative has a simple zero there, so Newton on it recovers full
// precision. The order is found by walking up the odd derivatives until the
// next one is clearly negative.
double polish_maximum(const SquaredModulus& g, double xi, int max_j) {
  for (int j = 1; j <= max_j; j += 2) {
    double x = xi;
    bool ok = true;
    for (int it = 0; it < 60; ++it) {
      const double dj = g.derivative(x, j);
      const double dj1 = g.derivative(x, j + 1);
      if (dj1 == 0.0) { ok = false; break; }
      const double step = dj / dj1;
      x -= step;
      if (std::abs(x - xi) > 1e-3) { ok = false; break; }
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    if (!ok) continue;
    const double next = g.derivative(x, j + 1);
    if (next < -1e-7 * g.scale(j + 1)) return x;
  }
  return xi;
}

struct MaximaSearch {
  double A = 0.0;
  std::vector<double> local_maxima;  // refined, wrapped, unsorted
  std::vector<double> moduli;
};

MaximaSearch search_maxima(const LatticeFunction& f, const SymbolTolerances& tol) {
  if (!f.admissible())
    fail(ErrorKind::invalid_argument, "function must have admissible support (at least two points); "
                                      "|fhat| is constant otherwise");
  const SquaredModulus g{autocorrelation(f)};
  const std::size_t samples =
      static_cast<std::size_t>(tol.samples_per_width) * static_cast<std::size_t>(std::max<std::int64_t>(1, f.width()));
  const double h = 2.0 * kPi / static_cast<double>(samples);
  std::vector<double> d(samples);
  for (std::size_t i = 0; i < samples; ++i) d[i] = g.derivative(-kPi + static_cast<double>(i + 1) * h, 1);

  MaximaSearch out;
  const int max_j = static_cast<int>(std::min<std::int64_t>(2 * g.c.width() + 1, 63));
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t next = (i + 1) % samples;
    if (!(d[i] > 0.0 && d[next] <= 0.0)) continue;
    const double a = -kPi + static_cast<double>(i + 1) * h;
    const double root = refine_bracket(g, a, a + h, d[next]);
    const double xi = wrap_angle(polish_maximum(g, root, max_j));
    out.local_maxima.push_back(xi);
    out.moduli.push_back(std::abs(evaluate_symbol(f, xi)));
  }
  if (out.local_maxima.empty()) fail(ErrorKind::numerical, "no local maximum of |fhat| found on the sampling grid");
  out.A = *std::max_element(out.moduli.begin(), out.moduli.end());
  return out;
}

double coefficient_scale(const LatticeFunction& f, std::int64_t center, int l, double A) {
  double s = 0.0;
  for (const auto& e : f.entries()) {
    double w = 1.0;
    const double x = static_cast<double>(e.x - center);
    for (int j = 1; j <= l; ++j) w *= std::abs(x) / j;
    s += std::abs(e.value) * w;
  }
  return s / A;
}

std::int64_t support_center(const LatticeFunction& f) {
  const auto sum = f.min_support() + f.max_support();
  return sum >= 0 ? sum / 2 : -((-sum + 1) / 2);
}

}  // namespace

double wrap_angle(double xi) {
  double r = std::remainder(xi, 2.0 * kPi);
  if (r <= -kPi + 4.0 * std::numeric_limits<double>::epsilon()) r += 2.0 * kPi;
  if (r > kPi) r = kPi;
  return r;
}

double circular_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

LatticeFunction autocorrelation(const LatticeFunction& f) {
  if (f.is_zero()) return {};
  const auto v = f.values();
  std::vector<cplx> reflected(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) reflected[v.size() - 1 - i] = std::conj(v[i]);
  return convolve(f, LatticeFunction(-f.max_support(), std::move(reflected)));
}

SupResult find_sup(const LatticeFunction& f, const SymbolTolerances& tol) {
  auto s = search_maxima(f, tol);
  std::sort(s.local_maxima.begin(), s.local_maxima.end());
  return {s.A, std::move(s.local_maxima)};
}

MaxPointSearch find_max_points(const LatticeFunction& f, const SymbolTolerances& tol) {
  const auto s = search_maxima(f, tol);
  MaxPointSearch out;
  out.A = s.A;
  std::vector<std::pair<double, double>> near;  // (xi, modulus) of points in Omega
  for (std::size_t i = 0; i < s.local_maxima.size(); ++i) {
    if (s.moduli[i] >= s.A * (1.0 - tol.max_membership)) {
      near.emplace_back(s.local_maxima[i], s.moduli[i]);
    } else if (s.moduli[i] >= s.A * (1.0 - 1e4 * tol.max_membership)) {
      out.warnings.push_back("local maximum at xi=" + fmt(s.local_maxima[i]) + " has |fhat|/A = " +
                             fmt(s.moduli[i] / s.A) + ", just outside the membership tolerance");
    }
  }
  std::sort(near.begin(), near.end());
  for (const auto& [xi, mod] : near) {
    bool dup = false;
    for (double kept : out.points) {
      const double dist = circular_distance(kept, xi);
      if (dist <= tol.dedup) {
        dup = true;
        break;
      }
      if (dist < 1e-3)
        out.warnings.push_back("maximizing points xi=" + fmt(kept) + " and xi=" + fmt(xi) +
                               " are closer than 1e-3 but beyond the dedup radius; possible numerical tie");
    }
    if (!dup) out.points.push_back(xi);
  }
  return out;
}

std::vector<cplx> gamma_series(const LatticeFunction& f, double xi0, int L) {
  if (L < 1) fail(ErrorKind::invalid_argument, "series length must be positive");
  const cplx base = evaluate_symbol(f, xi0);
  if (std::abs(base) < 1e-14) fail(ErrorKind::numerical, "symbol vanishes at xi=" + fmt(xi0) + "; singular point");

  // Expanding about the support center keeps the weights (x - c)^l / l! small;
  // the shift contributes i c xi to Gamma, restored in a_1 below.
  const auto c = support_center(f);
  std::vector<cplx> h(static_cast<std::size_t>(L) + 1);
  for (const auto& e : f.entries()) {
    const cplx phase = e.value * std::polar(1.0, static_cast<double>(e.x) * xi0);
    const cplx step{0.0, static_cast<double>(e.x - c)};
    cplx w = 1.0;
    for (int l = 1; l <= L; ++l) {
      w *= step / static_cast<double>(l);
      h[l] += phase * w;
    }
  }
  for (int l = 1; l <= L; ++l) h[l] /= base;

  std::vector<cplx> a(static_cast<std::size_t>(L) + 1);
  for (int l = 1; l <= L; ++l) {
    cplx acc{};
    for (int j = 1; j < l; ++j) acc += static_cast<double>(j) * a[j] * h[l - j];
    a[l] = h[l] - acc / static_cast<double>(l);
  }
  a[1] += cplx{0.0, static_cast<double>(c)};
  return {a.begin() + 1, a.end()};
}

MaxPoint classify_point(const LatticeFunction& f, double xi0, const SymbolTolerances& tol) {
  const cplx value = evaluate_symbol(f, xi0);
  const double A = std::abs(value);
  if (A < 1e-14) fail(ErrorKind::numerical, "symbol vanishes at xi=" + fmt(xi0) + "; singular point");
  const auto center = support_center(f);
  const auto contradiction = [&](const std::string& why) {
    fail(ErrorKind::numerical, "classification contradicts the local structure of a maximum at xi=" + fmt(xi0) +
                                   ": " + why + " (numerical tie or non-maximal input)");
  };

  int L = static_cast<int>(std::min<std::int64_t>(2 * f.width() + 4, tol.max_order));
  for (;;) {
    const auto a = gamma_series(f, xi0, L);
    const auto at = [&](int l) { return a[static_cast<std::size_t>(l - 1)]; };
    const auto eps = [&](int l) { return tol.coefficient * coefficient_scale(f, center, l, A); };

    if (std::abs(at(1).real()) > eps(1)) contradiction("Re a_1 = " + fmt(at(1).real()) + " is not zero");

    int m = 0;
    for (int l = 2; l <= L; ++l)
      if (std::abs(at(l)) > eps(l)) {
        m = l;
        break;
      }
    if (m != 0) {
      MaxPoint p;
      p.xi = xi0;
      p.symbol_value = value;
      p.order_m = m;
      p.drift_alpha = at(1).imag();
      p.beta = -at(m);
      if (std::abs(at(m).real()) > eps(m)) {
        if (m % 2 != 0) contradiction("type 1 point of odd order " + std::to_string(m));
        if (!(p.beta.real() > 0)) contradiction("type 1 point with Re(beta) <= 0");
        p.point_type = PointType::type1;
        p.taylor = a;
        return p;
      }
      int k = 0;
      for (int l = 1; l <= L; ++l)
        if (std::abs(at(l).real()) > eps(l)) {
          k = l;
          break;
        }
      if (k != 0) {
        if (k <= m) contradiction("k=" + std::to_string(k) + " does not exceed m=" + std::to_string(m));
        if (k % 2 != 0) contradiction("odd k=" + std::to_string(k));
        const double gamma = -at(k).real();
        if (!(gamma > 0)) contradiction("Re a_k >= 0");
        p.point_type = PointType::type2;
        p.beta = cplx{0.0, p.beta.imag()};  // type 2 has purely imaginary beta
        p.k = k;
        p.gamma = gamma;
        p.taylor = a;
        return p;
      }
    }
    if (L >= tol.max_order)
      fail(ErrorKind::numerical, "expansion order exhausted at xi=" + fmt(xi0) + " (L=" + std::to_string(L) + ")");
    L = std::min(2 * L, tol.max_order);
  }
}

MomentConstants moment_constants(const LatticeFunction& f, double xi, int k_max) {
  const cplx base = evaluate_symbol(f, xi);
  if (std::abs(base) < 1e-14) fail(ErrorKind::numerical, "symbol vanishes at xi=" + fmt(xi) + "; singular point");
  std::vector<cplx> moments(static_cast<std::size_t>(std::max(k_max, 1)) + 1);
  for (const auto& e : f.entries()) {
    const double x = static_cast<double>(e.x);
    const cplx w = e.value * std::polar(1.0, x * xi);
    double p = 1.0;
    for (int k = 1; k <= std::max(k_max, 1); ++k) {
      p *= x;
      moments[k] += w * p;
    }
  }
  MomentConstants out;
  out.a = moments[1] / base;
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  double factorial = 1.0;
  for (int k = 2; k <= k_max; ++k) {
    factorial *= k;
    out.b.push_back(kIPow[k % 4] / factorial * (std::pow(out.a, k) - moments[k] / base));
  }
  return out;
}

SymbolAnalysis analyze(const LatticeFunction& f, const SymbolTolerances& tol) {
  const auto search = find_max_points(f, tol);
  SymbolAnalysis sa;
  sa.A = search.A;
  sa.warnings = search.warnings;
  for (double xi : search.points) sa.omega.push_back(classify_point(f, xi, tol));
  if (sa.omega.empty()) fail(ErrorKind::numerical, "no maximizing frequency found");

  // Independent route: the moment formulas must reproduce alpha, m and beta.
  for (const auto& p : sa.omega) {
    const auto mc = moment_constants(f, p.xi, p.order_m);
    const auto scale = [&](int l) { return std::max(1.0, coefficient_scale(f, 0, l, sa.A)); };
    const auto mismatch = [&](const std::string& what, double got, double want) {
      fail(ErrorKind::numerical, "moment cross-check failed at xi=" + fmt(p.xi) + ": " + what + " series=" +
                                     fmt(want) + " moments=" + fmt(got));
    };
    if (std::abs(mc.a.real() - p.drift_alpha) > tol.cross_check * scale(1) ||
        std::abs(mc.a.imag()) > tol.cross_check * scale(1))
      mismatch("alpha", std::abs(mc.a), p.drift_alpha);
    for (int l = 2; l < p.order_m; ++l)
      if (std::abs(mc.b_at(l)) > tol.cross_check * scale(l))
        mismatch("b_" + std::to_string(l) + " (expected 0)", std::abs(mc.b_at(l)), 0.0);
    if (std::abs(mc.b_at(p.order_m) - p.beta) > tol.cross_check * scale(p.order_m))
      mismatch("beta", std::abs(mc.b_at(p.order_m)), std::abs(p.beta));
  }

  for (const auto& p : sa.omega) sa.m_phi = std::max(sa.m_phi, p.order_m);
  for (std::size_t q = 0; q < sa.omega.size(); ++q)
    if (sa.omega[q].order_m == sa.m_phi) sa.max_order_indices.push_back(q);

  auto by_alpha = sa.max_order_indices;
  std::stable_sort(by_alpha.begin(), by_alpha.end(), [&](std::size_t a, std::size_t b) {
    return sa.omega[a].drift_alpha < sa.omega[b].drift_alpha;
  });
  for (std::size_t idx : by_alpha) {
    if (!sa.drift_groups.empty()) {
      const auto last = sa.drift_groups.back().back();
      if (std::abs(sa.omega[idx].drift_alpha - sa.omega[last].drift_alpha) <= tol.drift_cluster) {
        sa.drift_groups.back().push_back(idx);
        continue;
      }
    }
    sa.drift_groups.push_back({idx});
  }
  for (auto& g : sa.drift_groups) std::sort(g.begin(), g.end());
  return sa;
}

bool strong_hypothesis_holds(const SymbolAnalysis& sa) {
  if (sa.m_phi > 2) return true;
  for (std::size_t q : sa.max_order_indices)
    if (sa.omega[q].point_type != PointType::type1) return false;
  return true;
}

}  // namespace convpow
