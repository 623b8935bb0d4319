#pragma once

#include <algorithm>
#include <vector>

#include "convpow/lattice.hpp"
#include "oracles.hpp"

namespace testing_support {

inline convpow::LatticeFunction to_lattice(const oracle::Table& t) {
  std::vector<convpow::Entry> e;
  for (const auto& [x, v] : t) e.push_back({x, {static_cast<double>(v.real()), static_cast<double>(v.imag())}});
  return convpow::LatticeFunction::from_entries(e);
}

inline convpow::LatticeFunction ex1() {
  using c = convpow::cplx;
  return to_lattice(oracle::table({{0, c(5, -2) / 8.0}, {1, c(2, 1) / 8.0}, {-1, c(2, 1) / 8.0}, {2, -1.0 / 16}, {-2, -1.0 / 16}}));
}

inline convpow::LatticeFunction airy_example() {
  using c = convpow::cplx;
  return to_lattice(oracle::table({{0, 3.0 / 8}, {2, -0.25}, {-2, -0.25}, {3, c(0, 1.0 / 3)}, {-3, c(0, 1.0 / 3)},
                                   {4, 1.0 / 16}, {-4, 1.0 / 16}}));
}

inline convpow::LatticeFunction lazy_walk() { return to_lattice(oracle::table({{-1, 0.25}, {0, 0.5}, {1, 0.25}})); }

/// max_x |a(x) - b(x)| / max_x |b(x)|.
inline double relative_sup_gap(const convpow::LatticeFunction& a, const convpow::LatticeFunction& b) {
  const auto lo = std::min(a.min_support(), b.min_support());
  const auto hi = std::max(a.max_support(), b.max_support());
  double d = 0.0, r = 0.0;
  for (auto x = lo; x <= hi; ++x) {
    d = std::max(d, std::abs(a(x) - b(x)));
    r = std::max(r, std::abs(b(x)));
  }
  return d / r;
}

}  // namespace testing_support
