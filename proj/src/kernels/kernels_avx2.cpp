// Compiled with -mavx2 -mfma. Only reached through the dispatch table after
// a CPUID check, so nothing here may be inlined into generic code.

#include "annulus/kernels.hpp"

#include <immintrin.h>

namespace annulus::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

// Two complex values per register: [re0, im0, re1, im1].
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) noexcept {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    __m256d acc_re0 = _mm256_setzero_pd(), acc_im0 = _mm256_setzero_pd();
    __m256d acc_re1 = _mm256_setzero_pd(), acc_im1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
        const __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
        const __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
        // re lanes: ar*br, ai*bi ; im lanes: ar*bi, ai*br
        acc_re0 = _mm256_fmadd_pd(va0, vb0, acc_re0);
        acc_re1 = _mm256_fmadd_pd(va1, vb1, acc_re1);
        acc_im0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), acc_im0);
        acc_im1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), acc_im1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        acc_re0 = _mm256_fmadd_pd(va, vb, acc_re0);
        acc_im0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), acc_im0);
    }
    const __m256d acc_re = _mm256_add_pd(acc_re0, acc_re1);
    // im = ai*br - ar*bi: odd lanes minus even lanes
    const __m256d acc_im = _mm256_add_pd(acc_im0, acc_im1);
    const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
    double re = hsum(acc_re);
    double im = hsum(_mm256_mul_pd(acc_im, sign));
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
    }
    return {re, im};
}

cplx weighted_sum(const double* w, const cplx* v, std::size_t n) noexcept {
    const auto* pv = reinterpret_cast<const double*>(v);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m128d w2 = _mm_loadu_pd(w + i);
        // [w0, w0, w1, w1]
        const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0b01010000);
        acc = _mm256_fmadd_pd(ww, _mm256_loadu_pd(pv + 2 * i), acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double re = lanes[0] + lanes[2];
    double im = lanes[1] + lanes[3];
    for (; i < n; ++i) {
        re += w[i] * v[i].real();
        im += w[i] * v[i].imag();
    }
    return {re, im};
}

void multiply(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept {
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    auto* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        const __m256d b_re = _mm256_movedup_pd(vb);
        const __m256d b_im = _mm256_permute_pd(vb, 0b1111);
        const __m256d a_sw = _mm256_permute_pd(va, 0b0101);
        // even lanes: ar*br - ai*bi ; odd lanes: ai*br + ar*bi
        _mm256_storeu_pd(po + 2 * i, _mm256_fmaddsub_pd(va, b_re, _mm256_mul_pd(a_sw, b_im)));
    }
    for (; i < n; ++i) {
        out[i] = a[i] * b[i];
    }
}

}  // namespace annulus::kernels::avx2
