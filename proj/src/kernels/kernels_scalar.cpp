#include "annulus/kernels.hpp"

namespace annulus::kernels::scalar {

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) noexcept {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
    return {re, im};
}

cplx weighted_sum(const double* w, const cplx* v, std::size_t n) noexcept {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += w[i] * v[i].real();
        im += w[i] * v[i].imag();
    }
    return {re, im};
}

void multiply(const cplx* a, const cplx* b, cplx* out, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = cplx(ar * br - ai * bi, ar * bi + ai * br);
    }
}

}  // namespace annulus::kernels::scalar
