#pragma once

// Data-parallel inner loops shared by the quadrature and assembly code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The variant is picked once at startup from CPUID; tests
// can force either backend to check that they agree.

#include <complex>
#include <span>
#include <string_view>

namespace annulus::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

// sum_i a[i] * conj(b[i])
cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b);

// sum_i w[i] * v[i]
cplx weighted_sum(std::span<const double> w, std::span<const cplx> v);

// out[i] = a[i] * b[i]; out may alias a or b.
void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);

Backend active_backend() noexcept;
bool backend_supported(Backend b) noexcept;
std::string_view backend_name(Backend b) noexcept;

// Not thread-safe; intended for tests and benchmarks. Throws if the CPU
// lacks the requested instruction set.
void set_backend(Backend b);

namespace scalar {
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) noexcept;
cplx weighted_sum(const double* w, const cplx* v, std::size_t n) noexcept;
void multiply(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept;
}  // namespace scalar

#if defined(ANNULUS_HAVE_AVX2)
namespace avx2 {
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) noexcept;
cplx weighted_sum(const double* w, const cplx* v, std::size_t n) noexcept;
void multiply(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace annulus::kernels
