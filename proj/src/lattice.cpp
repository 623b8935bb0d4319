#include "convpow/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "convpow/error.hpp"

namespace convpow {

LatticeFunction::LatticeFunction(std::int64_t offset, std::vector<cplx> values)
    : offset_(offset), values_(std::move(values)) {
  const cplx zero{0.0, 0.0};
  auto first = std::find_if(values_.begin(), values_.end(), [&](cplx v) { return v != zero; });
  if (first == values_.end()) {
    values_.clear();
    offset_ = 0;
    return;
  }
  auto last = std::find_if(values_.rbegin(), values_.rend(), [&](cplx v) { return v != zero; });
  const auto lead = first - values_.begin();
  values_.erase(last.base(), values_.end());
  values_.erase(values_.begin(), first);
  offset_ += lead;
}

LatticeFunction LatticeFunction::from_entries(std::span<const Entry> entries) {
  std::vector<std::pair<std::int64_t, std::size_t>> order;
  order.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) order.emplace_back(entries[i].x, i);
  std::sort(order.begin(), order.end());
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i].first == order[i - 1].first) {
      const auto idx = std::max(order[i].second, order[i - 1].second);
      fail(ErrorKind::invalid_argument, "duplicate support point x=" + std::to_string(order[i].first) +
                                            " at entry index " + std::to_string(idx));
    }
  }
  if (order.empty()) return {};
  const std::int64_t lo = order.front().first;
  const std::int64_t hi = order.back().first;
  if (hi - lo > (std::int64_t{1} << 31))
    fail(ErrorKind::invalid_argument, "support span too large for dense storage");
  std::vector<cplx> values(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& e : entries) values[static_cast<std::size_t>(e.x - lo)] = e.value;
  return LatticeFunction(lo, std::move(values));
}

LatticeFunction LatticeFunction::delta(std::int64_t x, cplx value) { return LatticeFunction(x, {value}); }

bool LatticeFunction::admissible() const noexcept {
  // Canonical form: both ends nonzero, so two stored values means two support points.
  return values_.size() >= 2;
}

cplx LatticeFunction::operator()(std::int64_t x) const noexcept {
  if (values_.empty() || x < min_support() || x > max_support()) return {};
  return values_[static_cast<std::size_t>(x - offset_)];
}

std::vector<Entry> LatticeFunction::entries() const {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] != cplx{}) out.push_back({offset_ + static_cast<std::int64_t>(i), values_[i]});
  return out;
}

LatticeFunction LatticeFunction::scaled(cplx factor) const {
  std::vector<cplx> v(values_);
  for (auto& z : v) z *= factor;
  return LatticeFunction(offset_, std::move(v));
}

LatticeFunction LatticeFunction::modulated(double theta) const {
  std::vector<cplx> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = static_cast<double>(offset_ + static_cast<std::int64_t>(i));
    v[i] *= std::polar(1.0, theta * x);
  }
  return LatticeFunction(offset_, std::move(v));
}

LatticeFunction LatticeFunction::shifted(std::int64_t shift) const {
  if (values_.empty()) return {};
  return LatticeFunction(offset_ + shift, values_);
}

double LatticeFunction::l1_norm() const noexcept {
  double s = 0.0;
  for (auto v : values_) s += std::abs(v);
  return s;
}

LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const auto fv = f.values();
  const auto gv = g.values();
  std::vector<cplx> out(fv.size() + gv.size() - 1);
  // Loop over the shorter factor on the outside so the inner loop is long and contiguous.
  const auto& outer = fv.size() <= gv.size() ? fv : gv;
  const auto& inner = fv.size() <= gv.size() ? gv : fv;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const cplx a = outer[i];
    if (a == cplx{}) continue;
    cplx* dst = out.data() + i;
    for (std::size_t j = 0; j < inner.size(); ++j) dst[j] += a * inner[j];
  }
  return LatticeFunction(f.offset() + g.offset(), std::move(out));
}

cplx evaluate_symbol(const LatticeFunction& f, double xi) { return symbol_derivative(f, xi, 0); }

cplx symbol_derivative(const LatticeFunction& f, double xi, int j) {
  if (j < 0) fail(ErrorKind::invalid_argument, "derivative order must be nonnegative");
  const auto v = f.values();
  // i^j cycles through 1, i, -1, -i.
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx sum{};
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == cplx{}) continue;
    const auto x = f.offset() + static_cast<std::int64_t>(k);
    const double xd = static_cast<double>(x);
    double weight = 1.0;
    if (j > 0) {
      if (x == 0) continue;
      weight = std::pow(xd, j);
    }
    sum += v[k] * weight * std::polar(1.0, xd * xi);
  }
  return sum * kIPow[j % 4];
}

cplx total_mass(const LatticeFunction& f) {
  cplx s{};
  for (auto v : f.values()) s += v;
  return s;
}

}  // namespace convpow
