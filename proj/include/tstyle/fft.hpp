#pragma once

#include <complex>
#include <vector>

namespace tstyle::fft {

/**
 * In-place forward DFT of arbitrary length:
 *   X_k = sum_n x_n exp(-2*pi*i*k*n/N).
 *
 * Power-of-two lengths run through an iterative radix-2 transform;
 * everything else goes through Bluestein's chirp-z reformulation, which
 * turns a length-N DFT into a power-of-two circular convolution. Twiddle
 * tables and chirp plans are cached per length (thread local).
 */
void fft(std::vector<std::complex<double>>& data);

/// Inverse counterpart of fft() (including the 1/N scale).
void ifft(std::vector<std::complex<double>>& data);

}  // namespace tstyle::fft
