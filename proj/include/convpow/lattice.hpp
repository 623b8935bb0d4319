#pragma once

// Finitely supported complex functions on the integers and their symbols.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace convpow {

using cplx = std::complex<double>;

struct Entry {
  std::int64_t x;
  cplx value;
};

/// A finitely supported function Z -> C stored as a dense window starting at
/// `offset()`. In canonical form the first and last stored values are nonzero;
/// the zero function has no values.
class LatticeFunction {
 public:
  LatticeFunction() = default;

  /// Takes values for offset, offset+1, ... and trims exact zeros at both ends.
  LatticeFunction(std::int64_t offset, std::vector<cplx> values);

  /// Builds from scattered (x, value) pairs. Duplicate x is rejected with the
  /// index of the second occurrence; zero values are dropped.
  static LatticeFunction from_entries(std::span<const Entry> entries);
  static LatticeFunction delta(std::int64_t x, cplx value = 1.0);

  bool is_zero() const noexcept { return values_.empty(); }
  /// True iff the support has at least two points.
  bool admissible() const noexcept;

  std::int64_t offset() const noexcept { return offset_; }
  std::int64_t min_support() const noexcept { return offset_; }
  std::int64_t max_support() const noexcept {
    return offset_ + static_cast<std::int64_t>(values_.size()) - 1;
  }
  /// max_support - min_support (0 for a single point).
  std::int64_t width() const noexcept {
    return values_.empty() ? 0 : static_cast<std::int64_t>(values_.size()) - 1;
  }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cplx> values() const noexcept { return values_; }

  /// Value at x; zero outside the stored window.
  cplx operator()(std::int64_t x) const noexcept;

  /// Nonzero entries in ascending x.
  std::vector<Entry> entries() const;

  LatticeFunction scaled(cplx factor) const;
  /// x -> f(x) e^{i theta x}
  LatticeFunction modulated(double theta) const;
  /// x -> f(x - shift)
  LatticeFunction shifted(std::int64_t shift) const;

  /// Sum of |f(x)|.
  double l1_norm() const noexcept;

  friend bool operator==(const LatticeFunction&, const LatticeFunction&) = default;

 private:
  std::int64_t offset_ = 0;
  std::vector<cplx> values_;
};

/// (f*g)(x) = sum_y f(x-y) g(y). Direct O(|f||g|) loop; no epsilon trimming.
LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g);

/// sum_x f(x) e^{i x xi}
cplx evaluate_symbol(const LatticeFunction& f, double xi);

/// j-th derivative of the symbol: sum_x (i x)^j f(x) e^{i x xi}.
cplx symbol_derivative(const LatticeFunction& f, double xi, int j);

/// sum_x f(x), which equals the symbol at 0.
cplx total_mass(const LatticeFunction& f);

}  // namespace convpow
