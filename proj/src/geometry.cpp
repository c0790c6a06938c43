#include "annulus/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "annulus/errors.hpp"
#include "annulus/kernels.hpp"

namespace annulus {

GaussRule gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[n - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[n - 1 - i] = half * w;
    }
    return rule;
}

std::vector<double> circle_angles(int m) {
    std::vector<double> t(m);
    for (int j = 0; j < m; ++j) t[j] = 2.0 * std::numbers::pi * j / m;
    return t;
}

AnnulusGeometry::AnnulusGeometry(double inner_radius, int circle_samples, int radial_nodes)
    : R_(inner_radius), m_circle_(circle_samples) {
    if (!(inner_radius > 0.0 && inner_radius < 1.0))
        throw std::invalid_argument("inner radius must satisfy 0 < R < 1, got " + std::to_string(inner_radius));
    if (circle_samples < 8 || (circle_samples & (circle_samples - 1)) != 0)
        throw std::invalid_argument("circle samples must be a power of two >= 8, got " +
                                    std::to_string(circle_samples));
    if (radial_nodes < 1)
        throw std::invalid_argument("radial nodes must be positive, got " + std::to_string(radial_nodes));
    radial_ = gauss_legendre(radial_nodes, R_, 1.0);
}

const char* basis_tag_name(BasisTag tag) noexcept {
    switch (tag) {
        case BasisTag::HardyAnnulus: return "hardy-annulus";
        case BasisTag::Complement: return "complement";
        case BasisTag::BergmanAnnulus: return "bergman-annulus";
        case BasisTag::DiscHardy: return "disc-hardy";
        case BasisTag::DiscComplement: return "disc-complement";
    }
    return "unknown";
}

double hardy_scale(int n, double R) noexcept {
    if (n >= 0) return 1.0 / std::sqrt(1.0 + std::pow(R, 2.0 * n));
    // R^{2n} is large; divide through by it.
    const double q = std::pow(R, -2.0 * n);
    return std::sqrt(q / (1.0 + q));
}

double complement_scale(int n, double R) noexcept {
    if (n >= 0) return std::pow(R, n) / std::sqrt(1.0 + std::pow(R, 2.0 * n));
    return 1.0 / std::sqrt(1.0 + std::pow(R, -2.0 * n));
}

namespace {

cplx unit(double angle, int n) { return std::polar(1.0, n * angle); }

}  // namespace

cplx hardy_basis_eval(int n, BoundaryPoint z, const AnnulusGeometry& geo) {
    const double R = geo.inner_radius();
    // On C0, |z^n| = R^n, and R^n * s_n is the complement scale.
    const double modulus = z.component == Component::Outer ? hardy_scale(n, R) : complement_scale(n, R);
    return modulus * unit(z.angle, n);
}

cplx complement_basis_eval(int n, BoundaryPoint z, const AnnulusGeometry& geo) {
    const double R = geo.inner_radius();
    if (z.component == Component::Outer) return complement_scale(n, R) * unit(z.angle, n);
    // -z^n / (R^n sqrt(1+R^{2n})) with |z| = R leaves -e^{int} s_n
    return -hardy_scale(n, R) * unit(z.angle, n);
}

double bergman_norm_const(int n, double R) {
    if (!(R > 0.0 && R < 1.0)) throw std::invalid_argument("bergman_norm_const: need 0 < R < 1");
    if (n == -1) return 1.0 / std::sqrt(std::log(1.0 / R));
    const double k = 2.0 * (n + 1);
    // 1 - R^k via expm1 keeps precision when k log R is small.
    const double denom = -std::expm1(k * std::log(R));
    return std::sqrt(k / denom);
}

BoundarySamples sample_hardy_basis(int n, const AnnulusGeometry& geo) {
    return sample_boundary([&](BoundaryPoint p) { return hardy_basis_eval(n, p, geo); }, geo);
}

BoundarySamples sample_complement_basis(int n, const AnnulusGeometry& geo) {
    return sample_boundary([&](BoundaryPoint p) { return complement_basis_eval(n, p, geo); }, geo);
}

cplx boundary_inner_product(const BoundarySamples& f, const BoundarySamples& g, const AnnulusGeometry& geo) {
    const auto m = static_cast<std::size_t>(geo.circle_samples());
    if (f.outer.size() != m || f.inner.size() != m || g.outer.size() != m || g.inner.size() != m)
        throw GeometryMismatch("boundary samples do not match the geometry's circle grid of " +
                               std::to_string(m) + " points");
    const cplx outer = kernels::dot_conj(f.outer, g.outer);
    const cplx inner = kernels::dot_conj(f.inner, g.inner);
    return (outer + inner) / static_cast<double>(m);
}

}  // namespace annulus
