#pragma once

#include <complex>
#include <span>

namespace convpow::detail {

/// In-place radix-2 transform. Forward uses e^{-2 pi i jk/N}; the inverse
/// applies the conjugate kernel and divides by N. size must be a power of two.
void fft(std::span<std::complex<double>> data, bool inverse);

}  // namespace convpow::detail
