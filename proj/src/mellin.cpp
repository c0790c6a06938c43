#include "annulus/radial.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "annulus/errors.hpp"
#include "annulus/kernels.hpp"

namespace annulus {

RadialProfile RadialProfile::polynomial(CoefficientMap powers) {
    RadialProfile p;
    p.repr_ = std::move(powers);
    return p;
}

RadialProfile RadialProfile::sampled(GaussRule rule, std::vector<cplx> values) {
    if (rule.nodes.size() != values.size() || rule.weights.size() != values.size())
        throw GeometryMismatch("radial samples do not match the quadrature rule");
    RadialProfile p;
    p.repr_ = Samples{std::move(rule), std::move(values)};
    return p;
}

const CoefficientMap& RadialProfile::powers() const {
    if (!is_polynomial()) throw PreconditionError("radial profile is sampled, not polynomial");
    return std::get<CoefficientMap>(repr_);
}

const GaussRule& RadialProfile::rule() const {
    if (is_polynomial()) throw PreconditionError("radial profile is polynomial, not sampled");
    return std::get<Samples>(repr_).rule;
}

const std::vector<cplx>& RadialProfile::values() const {
    if (is_polynomial()) throw PreconditionError("radial profile is polynomial, not sampled");
    return std::get<Samples>(repr_).values;
}

cplx RadialProfile::operator()(double r) const {
    cplx s = 0.0;
    for (const auto& [m, c] : powers()) s += c * std::pow(r, m);
    return s;
}

bool RadialProfile::is_zero() const noexcept {
    if (is_polynomial()) {
        const auto& p = std::get<CoefficientMap>(repr_);
        return std::all_of(p.begin(), p.end(), [](const auto& kv) { return kv.second == cplx(0.0); });
    }
    const auto& v = std::get<Samples>(repr_).values;
    return std::all_of(v.begin(), v.end(), [](cplx c) { return c == cplx(0.0); });
}

RadialProfile sample_profile(const RadialProfile& poly, const GaussRule& rule) {
    std::vector<cplx> v;
    v.reserve(rule.nodes.size());
    for (double r : rule.nodes) v.push_back(poly(r));
    return RadialProfile::sampled(rule, std::move(v));
}

cplx mellin_monomial(cplx w, double R) {
    const double L = std::log(R);
    const cplx x = w * L;
    if (w.imag() == 0.0) {
        const double wr = w.real();
        if (wr == 0.0) return -L;
        return -std::expm1(wr * L) / wr;
    }
    if (std::abs(x) < 0.5) {
        // (1 - e^x)/w = -L * sum_k x^k/(k+1)!
        cplx term = 1.0, sum = 1.0;
        for (int k = 1; k < 24; ++k) {
            term *= x / static_cast<double>(k + 1);
            sum += term;
        }
        return -L * sum;
    }
    return (1.0 - std::exp(x)) / w;
}

cplx mellin(const RadialProfile& phi, cplx z, double R) {
    if (phi.is_polynomial()) {
        cplx s = 0.0;
        for (const auto& [m, c] : phi.powers()) s += c * mellin_monomial(z + static_cast<double>(m), R);
        return s;
    }
    const auto& rule = phi.rule();
    const auto& v = phi.values();
    std::vector<cplx> integrand(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) integrand[i] = std::pow(cplx(rule.nodes[i]), z - 1.0);
    kernels::multiply(integrand, v, integrand);
    return kernels::weighted_sum(rule.weights, integrand);
}

namespace {

// Sum of |c_m| |term_m(z)|: the size a rounding error in the sum is measured against.
double mellin_magnitude(const RadialProfile& phi, double z, double R) {
    double s = 0.0;
    for (const auto& [m, c] : phi.powers()) s += std::abs(c) * std::abs(mellin_monomial(z + m, R));
    return s;
}

}  // namespace

std::vector<double> mellin_zero_locate(const RadialProfile& phi, double lo, double hi, double R) {
    if (!phi.is_polynomial()) throw PreconditionError("zero location needs a polynomial profile");
    if (phi.is_zero()) throw PreconditionError("identically zero profile");
    if (!(hi > lo)) throw std::invalid_argument("mellin_zero_locate: empty scan interval");

    // A real zero has to cancel both parts; scan the part with the larger coefficients.
    double re_size = 0.0, im_size = 0.0;
    for (const auto& [m, c] : phi.powers()) {
        re_size = std::max(re_size, std::abs(c.real()));
        im_size = std::max(im_size, std::abs(c.imag()));
    }
    const bool use_real = re_size >= im_size;
    auto part = [&](double z) {
        const cplx v = mellin(phi, z, R);
        return use_real ? v.real() : v.imag();
    };

    constexpr double kStep = 0.25;
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double z = lo + i * kStep;
        if (z >= hi) break;
        grid.push_back(z);
    }
    grid.push_back(hi);

    std::vector<double> roots;
    auto accept = [&](double z) {
        // The other part (and hence the full value) must vanish too.
        if (std::abs(mellin(phi, z, R)) <= 1e-8 * mellin_magnitude(phi, z, R)) roots.push_back(z);
    };

    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = part(grid[i]);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (vals[i] == 0.0) {
            accept(grid[i]);
            continue;
        }
        if (i + 1 == grid.size() || vals[i + 1] == 0.0) continue;
        if ((vals[i] < 0.0) == (vals[i + 1] < 0.0)) continue;
        double a = grid[i], b = grid[i + 1], fa = vals[i];
        for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
            const double mid = 0.5 * (a + b);
            const double fm = part(mid);
            if (fm == 0.0) {
                a = b = mid;
                break;
            }
            if ((fm < 0.0) == (fa < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        accept(0.5 * (a + b));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(), [](double x, double y) { return std::abs(x - y) < 1e-9; }),
                roots.end());
    return roots;
}

std::vector<MellinSample> mellin_progression(const RadialProfile& phi, int n0, int step, int count, double R) {
    std::vector<MellinSample> out;
    out.reserve(count);
    for (int j = 1; j <= count; ++j) {
        const double z = n0 + static_cast<double>(step) * j;
        out.push_back({z, mellin(phi, z, R)});
    }
    return out;
}

MellinReconstruction mellin_poly_reconstruct(std::span<const MellinSample> values, int degree, double R) {
    if (degree < 0) throw std::invalid_argument("mellin_poly_reconstruct: negative degree");
    const int n = degree + 1;
    if (static_cast<int>(values.size()) != n)
        throw std::invalid_argument("mellin_poly_reconstruct: need exactly degree+1 = " + std::to_string(n) +
                                    " samples, got " + std::to_string(values.size()));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (values[i].z == values[j].z)
                throw std::invalid_argument("mellin_poly_reconstruct: sample points must be distinct");

    Eigen::MatrixXd A(n, n);
    Eigen::VectorXcd b(n);
    for (int i = 0; i < n; ++i) {
        for (int m = 0; m < n; ++m) A(i, m) = mellin_monomial(values[i].z + m, R).real();
        b(i) = values[i].value;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& sv = svd.singularValues();
    const double cond = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e13))
        throw SingularSystem("Mellin moment matrix is singular to working precision (condition " +
                                 std::to_string(cond) + ")",
                             cond);

    const Eigen::MatrixXcd Ac = A.cast<cplx>();
    const Eigen::VectorXcd c = Ac.fullPivLu().solve(b);
    MellinReconstruction out{{}, cond};
    for (int m = 0; m < n; ++m) out.powers[m] = c(m);
    return out;
}

PolarSymbol::PolarSymbol(std::map<int, RadialProfile> bands) : bands_(std::move(bands)) {}

std::pair<int, int> PolarSymbol::support() const {
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& [k, prof] : bands_) {
        if (prof.is_zero()) continue;
        if (!any) lo = hi = k;
        lo = std::min(lo, k);
        hi = std::max(hi, k);
        any = true;
    }
    return {lo, hi};
}

int PolarSymbol::bandwidth() const {
    const auto [lo, hi] = support();
    if (hi < lo) return 0;
    return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace annulus
