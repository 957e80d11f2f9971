#pragma once

// Thin wrapper over FFTW complex transforms of arbitrary length. Plans are
// cached per (length, direction) behind a mutex; execution is thread-safe.

#include <complex>
#include <span>

namespace gsqg::fft {

using cplx = std::complex<double>;

/// out_k = (1/n) sum_j in_j exp(-2 pi i j k / n)
void forward(std::span<const cplx> in, std::span<cplx> out);
/// out_j = sum_k in_k exp(+2 pi i j k / n)
void backward(std::span<const cplx> in, std::span<cplx> out);

}  // namespace gsqg::fft
