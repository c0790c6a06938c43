#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

namespace annulus {

using cplx = std::complex<double>;
using CoefficientMap = std::map<int, cplx>;

// Fourier coefficient (1/m) sum_j v_j e^{-i n theta_j} by direct summation.
cplx direct_coefficient(std::span<const cplx> samples, int n);

// All m coefficients of a uniform sample vector through FFTW; entry k holds
// the coefficient of index k for k < m/2 and of index k - m above that.
std::vector<cplx> fft_coefficients(std::span<const cplx> samples);

// Evaluates sum_n c_n e^{i n theta_j} on the uniform grid of m points.
std::vector<cplx> synthesize(const CoefficientMap& terms, int m);

}  // namespace annulus
