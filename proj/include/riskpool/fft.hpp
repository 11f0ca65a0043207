#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace riskpool::fft {

std::size_t next_pow2(std::size_t n);

/// In-place radix-2 transform; a.size() must be a power of two.
void transform(std::span<std::complex<double>> a, bool inverse);

/// Linear convolution of two real sequences, computed on a zero-padded
/// power-of-two grid so no circular wrap-around can occur. Output length is
/// exactly a.size() + b.size() - 1.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

}  // namespace riskpool::fft
