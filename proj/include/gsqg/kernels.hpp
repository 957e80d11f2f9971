#pragma once

// Pointwise inner loops of the pseudospectral pipeline. Every kernel has a
// scalar reference implementation and, where the CPU supports it, an AVX2
// variant. Variants are required to agree bit-for-bit (no FMA, identical
// operation order per element), which is what keeps the simulator's output
// independent of the host's instruction set.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace gsqg::kernels {

using cplx = std::complex<double>;

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  /// out[i] = in[i] * mult[i]   (complex times real)
  void (*scale_complex)(const cplx* in, const double* mult, cplx* out, std::size_t n);
  /// out[i] = in[i] * phase[i]  (complex times complex)
  void (*rotate_complex)(const cplx* in, const cplx* phase, cplx* out, std::size_t n);
  /// out[i] = a[i] * b[i] * c[i]
  void (*mul3)(const double* a, const double* b, const double* c, double* out, std::size_t n);
  /// y[i] += alpha * x[i]   (complex)
  void (*axpy_complex)(double alpha, const cplx* x, cplx* y, std::size_t n);
};

/// Best instruction set available on this CPU.
Isa detect();
bool available(Isa isa);
const KernelTable& table(Isa isa);

/// Table used by the library; defaults to detect(), overridable via the
/// GSQG_SIMD environment variable ("scalar" or "avx2") or set_active().
const KernelTable& active();
void set_active(Isa isa);
std::string_view name(Isa isa);

inline void scale_complex(std::span<const cplx> in, std::span<const double> mult, std::span<cplx> out) {
  active().scale_complex(in.data(), mult.data(), out.data(), in.size());
}
inline void rotate_complex(std::span<const cplx> in, std::span<const cplx> phase, std::span<cplx> out) {
  active().rotate_complex(in.data(), phase.data(), out.data(), in.size());
}
inline void mul3(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                 std::span<double> out) {
  active().mul3(a.data(), b.data(), c.data(), out.data(), a.size());
}
inline void axpy_complex(double alpha, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy_complex(alpha, x.data(), y.data(), x.size());
}

}  // namespace gsqg::kernels
