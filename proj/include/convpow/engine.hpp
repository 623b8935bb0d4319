#pragma once

// Convolution powers: a binary-exponentiation oracle and a DFT fast path.

#include <cstdint>
#include <vector>

#include "convpow/lattice.hpp"

namespace convpow {

enum class PowerMethod { direct, dft };

struct PowerResult {
  std::int64_t n = 0;
  LatticeFunction result;
  PowerMethod method = PowerMethod::direct;
};

/// n-th convolution power by square-and-multiply over `convolve`. n >= 1.
PowerResult power_direct(const LatticeFunction& f, std::int64_t n);

struct DftOptions {
  /// Largest transform length the caller is willing to allocate.
  std::size_t max_length = std::size_t{1} << 26;
};

/// n-th convolution power through a zero-padded DFT of length
/// bit_ceil(n * width + 1). The pointwise power is taken in polar form.
/// The result covers exactly [n min supp f, n max supp f].
PowerResult power_dft(const LatticeFunction& f, std::int64_t n, const DftOptions& opts = {});

/// Transform length power_dft would use.
std::size_t dft_length(const LatticeFunction& f, std::int64_t n);

struct SupNorm {
  double value = 0.0;
  std::vector<std::int64_t> argmax;  // all x within relative 1e-12 of the max
};

SupNorm sup_norm(const LatticeFunction& f);

/// | sum_x |f^(n)(x)|^2 - (1/2pi) int |fhat|^{2n} |, the integral by composite
/// Gauss-Legendre.
double parseval_gap(const LatticeFunction& f, std::int64_t n);

/// (1/2pi) int_{-pi}^{pi} e^{-i x xi} fhat(xi)^n d xi for real x; equals
/// f^(n)(x) at integers.
cplx evaluate_extension(const LatticeFunction& f, std::int64_t n, double x);

/// z^n in polar form with the phase n*arg(z) reduced mod 2pi in extended precision.
cplx polar_power(cplx z, std::int64_t n);

}  // namespace convpow
