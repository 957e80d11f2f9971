#include "gsqg/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#define GSQG_X86 1
#include <immintrin.h>
#else
#define GSQG_X86 0
#endif

namespace gsqg::kernels {
namespace {

// ---------------------------------------------------------------------------
// Scalar reference
// ---------------------------------------------------------------------------

void scale_complex_scalar(const cplx* in, const double* mult, cplx* out, std::size_t n) {
  const double* src = reinterpret_cast<const double*>(in);
  double* dst = reinterpret_cast<double*>(out);
  for (std::size_t i = 0; i < n; ++i) {
    dst[2 * i] = src[2 * i] * mult[i];
    dst[2 * i + 1] = src[2 * i + 1] * mult[i];
  }
}

void rotate_complex_scalar(const cplx* in, const cplx* phase, cplx* out, std::size_t n) {
  const double* x = reinterpret_cast<const double*>(in);
  const double* p = reinterpret_cast<const double*>(phase);
  double* y = reinterpret_cast<double*>(out);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = x[2 * i], b = x[2 * i + 1];
    const double c = p[2 * i], d = p[2 * i + 1];
    y[2 * i] = a * c - b * d;
    y[2 * i + 1] = b * c + a * d;
  }
}

void mul3_scalar(const double* a, const double* b, const double* c, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (a[i] * b[i]) * c[i];
}

void axpy_complex_scalar(double alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* src = reinterpret_cast<const double*>(x);
  double* dst = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < 2 * n; ++i) dst[i] = dst[i] + alpha * src[i];
}

constexpr KernelTable kScalarTable{Isa::kScalar, scale_complex_scalar, rotate_complex_scalar, mul3_scalar,
                                   axpy_complex_scalar};

// ---------------------------------------------------------------------------
// AVX2
// ---------------------------------------------------------------------------

#if GSQG_X86

__attribute__((target("avx2"))) void scale_complex_avx2(const cplx* in, const double* mult, cplx* out,
                                                         std::size_t n) {
  const double* src = reinterpret_cast<const double*>(in);
  double* dst = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // [m0 m0 m1 m1]
    const __m128d m = _mm_loadu_pd(mult + i);
    const __m256d mm = _mm256_permute4x64_pd(_mm256_castpd128_pd256(m), 0b01010000);
    const __m256d x = _mm256_loadu_pd(src + 2 * i);
    _mm256_storeu_pd(dst + 2 * i, _mm256_mul_pd(x, mm));
  }
  for (; i < n; ++i) {
    dst[2 * i] = src[2 * i] * mult[i];
    dst[2 * i + 1] = src[2 * i + 1] * mult[i];
  }
}

__attribute__((target("avx2"))) void rotate_complex_avx2(const cplx* in, const cplx* phase, cplx* out,
                                                          std::size_t n) {
  const double* x = reinterpret_cast<const double*>(in);
  const double* p = reinterpret_cast<const double*>(phase);
  double* y = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(x + 2 * i);          // a0 b0 a1 b1
    const __m256d w = _mm256_loadu_pd(p + 2 * i);          // c0 d0 c1 d1
    const __m256d wre = _mm256_movedup_pd(w);              // c0 c0 c1 c1
    const __m256d wim = _mm256_permute_pd(w, 0b1111);      // d0 d0 d1 d1
    const __m256d vsw = _mm256_permute_pd(v, 0b0101);      // b0 a0 b1 a1
    const __m256d t1 = _mm256_mul_pd(v, wre);              // a c, b c
    const __m256d t2 = _mm256_mul_pd(vsw, wim);            // b d, a d
    _mm256_storeu_pd(y + 2 * i, _mm256_addsub_pd(t1, t2));  // ac - bd, bc + ad
  }
  for (; i < n; ++i) {
    const double a = x[2 * i], b = x[2 * i + 1];
    const double c = p[2 * i], d = p[2 * i + 1];
    y[2 * i] = a * c - b * d;
    y[2 * i + 1] = b * c + a * d;
  }
}

__attribute__((target("avx2"))) void mul3_avx2(const double* a, const double* b, const double* c, double* out,
                                                std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(ab, _mm256_loadu_pd(c + i)));
  }
  for (; i < n; ++i) out[i] = (a[i] * b[i]) * c[i];
}

__attribute__((target("avx2"))) void axpy_complex_avx2(double alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* src = reinterpret_cast<const double*>(x);
  double* dst = reinterpret_cast<double*>(y);
  const std::size_t m = 2 * n;
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(src + i));
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), prod));
  }
  for (; i < m; ++i) dst[i] = dst[i] + alpha * src[i];
}

constexpr KernelTable kAvx2Table{Isa::kAvx2, scale_complex_avx2, rotate_complex_avx2, mul3_avx2,
                                 axpy_complex_avx2};

#endif

Isa initial_isa() {
  Isa isa = detect();
  if (const char* env = std::getenv("GSQG_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) isa = Isa::kScalar;
    if (std::strcmp(env, "avx2") == 0 && available(Isa::kAvx2)) isa = Isa::kAvx2;
  }
  return isa;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&table(initial_isa())};
  return slot;
}

}  // namespace

bool available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if GSQG_X86
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detect() { return available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar; }

const KernelTable& table(Isa isa) {
#if GSQG_X86
  if (isa == Isa::kAvx2 && available(Isa::kAvx2)) return kAvx2Table;
#endif
  (void)isa;
  return kScalarTable;
}

const KernelTable& active() { return *active_slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) { active_slot().store(&table(isa), std::memory_order_relaxed); }

std::string_view name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

}  // namespace gsqg::kernels
