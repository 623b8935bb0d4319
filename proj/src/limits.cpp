#include "convpow/limits.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>

#include "convpow/attractor.hpp"
#include "convpow/engine.hpp"
#include "convpow/error.hpp"

namespace convpow {

namespace {

// e^{i (n arg w - x xi)} with the phase reduced in extended precision.
cplx unit_phase(std::int64_t n, double arg_w, std::int64_t x, double xi) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double p = static_cast<long double>(n) * arg_w - static_cast<long double>(x) * xi;
  p = std::fmod(p, two_pi);
  return std::polar(1.0, static_cast<double>(p));
}

void require_n(std::int64_t n) {
  if (n < 1) fail(ErrorKind::invalid_argument, "n must be >= 1 (got " + std::to_string(n) + ")");
}

void require_strong(const SymbolAnalysis& sa) {
  if (!strong_hypothesis_holds(sa))
    fail(ErrorKind::invalid_argument,
         "strong hypothesis fails (m_phi = 2 with a type 2 point of maximal order); use weak_approx instead");
}

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
  if (v.empty()) fail(ErrorKind::invalid_argument, "n list is empty");
  for (auto n : v) require_n(n);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

LatticeFunction normalized(const LatticeFunction& f, const SymbolAnalysis& sa) { return f.scaled(1.0 / sa.A); }

SymbolAnalysis checked_analysis(const LatticeFunction& f) {
  if (!f.admissible()) fail(ErrorKind::invalid_argument, "function must have at least two support points");
  return analyze(f);
}

// Runs body(n) for every n, in parallel when asked, and keeps the input order.
template <class Body>
std::vector<LimitRow> run_rows(const std::vector<std::int64_t>& ns, bool parallel, Body body) {
  std::vector<LimitRow> rows(ns.size());
  if (!parallel || ns.size() < 2) {
    for (std::size_t i = 0; i < ns.size(); ++i) rows[i] = body(ns[i]);
    return rows;
  }
  std::vector<std::future<LimitRow>> tasks;
  tasks.reserve(ns.size());
  for (auto n : ns) tasks.push_back(std::async(std::launch::async, body, n));
  for (std::size_t i = 0; i < ns.size(); ++i) rows[i] = tasks[i].get();
  return rows;
}

double relative_gap(const LatticeFunction& a, const LatticeFunction& b) {
  const std::int64_t lo = std::min(a.min_support(), b.min_support());
  const std::int64_t hi = std::max(a.max_support(), b.max_support());
  double diff = 0.0, ref = 0.0;
  for (std::int64_t x = lo; x <= hi; ++x) {
    diff = std::max(diff, std::abs(a(x) - b(x)));
    ref = std::max(ref, std::abs(b(x)));
  }
  return ref > 0.0 ? diff / ref : diff;
}

std::int64_t snapped_floor(double t) {
  const double r = std::round(t);
  if (std::abs(t - r) <= 1e-9 * std::max(1.0, std::abs(t))) return static_cast<std::int64_t>(r);
  return static_cast<std::int64_t>(std::floor(t));
}

}  // namespace

const char* to_string(LimitMode mode) {
  switch (mode) {
    case LimitMode::strong: return "strong";
    case LimitMode::weak: return "weak";
    case LimitMode::supnorm: return "supnorm";
    case LimitMode::packet: return "packet";
  }
  return "?";
}

std::size_t LimitReport::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  fail(ErrorKind::invalid_argument, "report has no column '" + name + "'");
}

double nth_scale(std::int64_t n, int m) {
  const double dn = static_cast<double>(n);
  if (m == 2) return std::sqrt(dn);
  if (m == 3) return std::cbrt(dn);
  return std::pow(dn, 1.0 / m);
}

cplx strong_approx(const SymbolAnalysis& sa, std::int64_t n, std::int64_t x, double eps) {
  require_n(n);
  require_strong(sa);
  const double s = nth_scale(n, sa.m_phi);
  cplx sum;
  for (auto j : sa.max_order_indices) {
    const auto& p = sa.omega[j];
    const double z = (static_cast<double>(x) - p.drift_alpha * static_cast<double>(n)) / s;
    const cplx h = attractor_eval({sa.m_phi, p.beta}, z, eps).value;
    sum += unit_phase(n, std::arg(p.symbol_value), x, p.xi) * h;
  }
  return sum / s;
}

WeakPoint weak_approx(const SymbolAnalysis& sa, std::int64_t n, std::size_t q, double z, double eps) {
  require_n(n);
  if (q >= sa.drift_groups.size())
    fail(ErrorKind::invalid_argument, "drift group " + std::to_string(q) + " does not exist (have " +
                                          std::to_string(sa.drift_groups.size()) + ")");
  const auto& group = sa.drift_groups[q];
  const double s = nth_scale(n, sa.m_phi);
  const double alpha = sa.omega[group.front()].drift_alpha;
  WeakPoint out;
  out.x = snapped_floor(alpha * static_cast<double>(n) + z * s);
  for (auto j : group) {
    const auto& p = sa.omega[j];
    const cplx h = attractor_eval({sa.m_phi, p.beta}, z, eps).value;
    out.value += unit_phase(n, std::arg(p.symbol_value), out.x, p.xi) * h;
  }
  out.value /= s;
  return out;
}

WeakCurve weak_curve(const LatticeFunction& f, std::int64_t n, std::size_t q, double z_lo, double z_hi, double z_step,
                     double eps) {
  require_n(n);
  if (!(z_step > 0.0) || !(z_hi >= z_lo)) fail(ErrorKind::invalid_argument, "z-window needs z_lo <= z_hi and step > 0");
  const auto sa = checked_analysis(f);
  const auto pw = power_dft(normalized(f, sa), n).result;
  WeakCurve c;
  const auto count = static_cast<std::size_t>(std::floor((z_hi - z_lo) / z_step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double z = z_lo + static_cast<double>(i) * z_step;
    const auto w = weak_approx(sa, n, q, z, eps);
    c.z.push_back(z);
    c.x.push_back(w.x);
    c.exact.push_back(pw(w.x));
    c.approx.push_back(w.value);
  }
  return c;
}

namespace {

StrongCurve strong_curve_with(const LatticeFunction& psi, const SymbolAnalysis& sa, std::int64_t n, double eps) {
  const auto pw = power_dft(psi, n).result;
  const double s = nth_scale(n, sa.m_phi);
  StrongCurve c;
  const std::size_t count = pw.size();
  const std::int64_t x0 = pw.min_support();
  c.x.resize(count);
  c.exact.assign(pw.values().begin(), pw.values().end());
  c.approx.assign(count, cplx{});
  for (std::size_t i = 0; i < count; ++i) c.x[i] = x0 + static_cast<std::int64_t>(i);
  for (auto j : sa.max_order_indices) {
    const auto& p = sa.omega[j];
    const double z0 = (static_cast<double>(x0) - p.drift_alpha * static_cast<double>(n)) / s;
    const auto h = attractor_grid({sa.m_phi, p.beta}, z0, 1.0 / s, count, eps);
    const double arg_w = std::arg(p.symbol_value);
    for (std::size_t i = 0; i < count; ++i) c.approx[i] += unit_phase(n, arg_w, c.x[i], p.xi) * h[i] / s;
  }
  return c;
}

}  // namespace

StrongCurve strong_curve(const LatticeFunction& f, std::int64_t n, double eps) {
  require_n(n);
  const auto sa = checked_analysis(f);
  require_strong(sa);
  return strong_curve_with(normalized(f, sa), sa, n, eps);
}

LimitReport residual_report(const LatticeFunction& f, std::vector<std::int64_t> n_list, LimitMode mode, std::size_t q,
                            double z_lo, double z_hi, double z_step, const ResidualOptions& opts) {
  if (mode != LimitMode::strong && mode != LimitMode::weak)
    fail(ErrorKind::invalid_argument, "residual_report handles the strong and weak modes");
  const auto ns = sorted_unique(std::move(n_list));
  LimitReport rep;
  rep.mode = mode;
  rep.analysis = checked_analysis(f);
  const auto& sa = rep.analysis;
  const auto psi = normalized(f, sa);
  if (mode == LimitMode::strong) {
    require_strong(sa);
    rep.columns = {"residual", "x_at_max"};
    rep.rows = run_rows(ns, opts.parallel, [&](std::int64_t n) {
      const auto c = strong_curve_with(psi, sa, n, opts.eps);
      double worst = 0.0;
      std::int64_t at = c.x.empty() ? 0 : c.x.front();
      for (std::size_t i = 0; i < c.x.size(); ++i) {
        const double d = std::abs(c.exact[i] - c.approx[i]);
        if (d > worst) worst = d, at = c.x[i];
      }
      return LimitRow{n, {nth_scale(n, sa.m_phi) * worst, static_cast<double>(at)}};
    });
  } else {
    if (q >= sa.drift_groups.size())
      fail(ErrorKind::invalid_argument, "drift group " + std::to_string(q) + " does not exist");
    rep.drift_index = q;
    rep.window = std::make_pair(z_lo, z_hi);
    rep.step = z_step;
    rep.columns = {"residual", "z_at_max"};
    rep.rows = run_rows(ns, opts.parallel, [&](std::int64_t n) {
      const auto c = weak_curve(f, n, q, z_lo, z_hi, z_step, opts.eps);
      double worst = 0.0, at = c.z.empty() ? 0.0 : c.z.front();
      for (std::size_t i = 0; i < c.z.size(); ++i) {
        const double d = std::abs(c.exact[i] - c.approx[i]);
        if (d > worst) worst = d, at = c.z[i];
      }
      return LimitRow{n, {nth_scale(n, sa.m_phi) * worst, at}};
    });
  }
  if (opts.cross_check) {
    const auto n = ns.back();
    rep.cross_check = relative_gap(power_dft(psi, n).result, power_direct(psi, n).result);
  }
  for (const auto& r : rep.rows)
    for (double v : r.values)
      if (!std::isfinite(v)) fail(ErrorKind::numerical, "non-finite residual at n = " + std::to_string(r.n));
  return rep;
}

LimitReport supnorm_scaling(const LatticeFunction& f, std::vector<std::int64_t> n_list, bool parallel) {
  const auto ns = sorted_unique(std::move(n_list));
  LimitReport rep;
  rep.mode = LimitMode::supnorm;
  rep.analysis = checked_analysis(f);
  const auto& sa = rep.analysis;
  const auto psi = normalized(f, sa);
  rep.columns = {"log_sup_norm", "sup_norm_normalized", "s_n"};
  rep.rows = run_rows(ns, parallel, [&](std::int64_t n) {
    const double sup = sup_norm(power_dft(psi, n).result).value;
    return LimitRow{n, {static_cast<double>(n) * std::log(sa.A) + std::log(sup), sup, nth_scale(n, sa.m_phi) * sup}};
  });
  const auto col = rep.column("s_n");
  double lo = rep.rows.front().values[col], hi = lo;
  for (const auto& r : rep.rows) lo = std::min(lo, r.values[col]), hi = std::max(hi, r.values[col]);
  rep.column_min = lo;
  rep.column_max = hi;
  return rep;
}

namespace {

PacketResult packet_check_with(const LatticeFunction& psi, const SymbolAnalysis& sa, std::int64_t n, double K) {
  const double s = nth_scale(n, sa.m_phi);
  PacketResult out;
  out.argmax = sup_norm(power_dft(psi, n).result).argmax;
  std::vector<double> centers;
  for (auto j : sa.max_order_indices) {
    const double c = sa.omega[j].drift_alpha * static_cast<double>(n);
    if (std::find(centers.begin(), centers.end(), c) != centers.end()) continue;
    centers.push_back(c);
    out.packets.emplace_back(c - K * s, c + K * s);
  }
  for (auto x : out.argmax) {
    double best = std::numeric_limits<double>::infinity();
    for (double c : centers) best = std::min(best, std::abs(static_cast<double>(x) - c) / s);
    out.k_needed = std::max(out.k_needed, best);
  }
  out.ok = out.k_needed <= K;
  return out;
}

}  // namespace

PacketResult packet_check(const LatticeFunction& f, std::int64_t n, double K) {
  require_n(n);
  if (!(K > 0.0)) fail(ErrorKind::invalid_argument, "packet width K must be positive");
  const auto sa = checked_analysis(f);
  require_strong(sa);
  return packet_check_with(normalized(f, sa), sa, n, K);
}

LimitReport packet_report(const LatticeFunction& f, std::vector<std::int64_t> n_list, double K) {
  if (!(K > 0.0)) fail(ErrorKind::invalid_argument, "packet width K must be positive");
  const auto ns = sorted_unique(std::move(n_list));
  LimitReport rep;
  rep.mode = LimitMode::packet;
  rep.analysis = checked_analysis(f);
  require_strong(rep.analysis);
  rep.packet_k = K;
  rep.columns = {"ok", "k_needed", "argmax_count"};
  const auto psi = normalized(f, rep.analysis);
  for (auto n : ns) {
    const auto p = packet_check_with(psi, rep.analysis, n, K);
    rep.rows.push_back({n, {p.ok ? 1.0 : 0.0, p.k_needed, static_cast<double>(p.argmax.size())}});
  }
  return rep;
}

}  // namespace convpow
