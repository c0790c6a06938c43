#include "annulus/fourier.hpp"

#include <fftw3.h>

#include <numbers>

#include "annulus/kernels.hpp"

namespace annulus {

namespace {

// e^{i n theta_j} with the phase reduced mod m before scaling, so large |n|
// does not lose digits in the angle.
std::vector<cplx> twiddles(int n, int m) {
    std::vector<cplx> w(m);
    const long long mm = m;
    long long step = n % mm;
    if (step < 0) step += mm;
    for (long long j = 0; j < mm; ++j) {
        const long long phase = (step * j) % mm;
        w[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / m);
    }
    return w;
}

}  // namespace

cplx direct_coefficient(std::span<const cplx> samples, int n) {
    const int m = static_cast<int>(samples.size());
    const auto w = twiddles(n, m);
    return kernels::dot_conj(samples, w) / static_cast<double>(m);
}

std::vector<cplx> fft_coefficients(std::span<const cplx> samples) {
    const int m = static_cast<int>(samples.size());
    std::vector<cplx> in(samples.begin(), samples.end());
    std::vector<cplx> out(m);
    fftw_plan plan = fftw_plan_dft_1d(m, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    const double scale = 1.0 / m;
    for (auto& c : out) c *= scale;
    return out;
}

std::vector<cplx> synthesize(const CoefficientMap& terms, int m) {
    std::vector<cplx> values(m, cplx(0.0));
    for (const auto& [n, c] : terms) {
        if (c == cplx(0.0)) continue;
        const auto w = twiddles(n, m);
        for (int j = 0; j < m; ++j) values[j] += c * w[j];
    }
    return values;
}

}  // namespace annulus
