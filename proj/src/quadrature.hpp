#pragma once

#include <complex>
#include <vector>

namespace convpow::detail {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `order` points (cached per order).
const GaussRule& gauss_legendre(int order);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
template <class F>
auto integrate_panels(F&& f, double a, double b, int panels, int order = 20) {
  const auto& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  using R = decltype(f(a));
  R total{};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    R part{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) part += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
    total += part * (0.5 * h);
  }
  return total;
}

}  // namespace convpow::detail
