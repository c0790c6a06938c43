#pragma once

#include <complex>
#include <vector>

namespace annulus {

using cplx = std::complex<double>;

// Gauss-Legendre rule mapped to an interval.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n, double a, double b);

// Uniform angles 2*pi*j/m, j = 0..m-1.
std::vector<double> circle_angles(int m);

/// The annulus {R < |z| < 1} together with the grids used to integrate on it.
///
/// The outer circle C has radius 1, the inner circle C0 radius R. Both circles
/// carry the same uniform grid of `circle_samples()` points; the radial
/// interval [R, 1] carries a Gauss-Legendre rule with `radial_nodes()` points.
/// Construction validates 0 < R < 1 and that the circle grid is a power of
/// two no smaller than 8.
class AnnulusGeometry {
public:
    explicit AnnulusGeometry(double inner_radius, int circle_samples = 4096, int radial_nodes = 128);

    double inner_radius() const noexcept { return R_; }
    int circle_samples() const noexcept { return m_circle_; }
    int radial_nodes() const noexcept { return static_cast<int>(radial_.nodes.size()); }
    const GaussRule& radial_rule() const noexcept { return radial_; }

private:
    double R_;
    int m_circle_;
    GaussRule radial_;
};

enum class Component { Outer, Inner };  // C (|z| = 1), C0 (|z| = R)

struct BoundaryPoint {
    Component component;
    double angle;
};

enum class BasisTag { HardyAnnulus, Complement, BergmanAnnulus, DiscHardy, DiscComplement };

const char* basis_tag_name(BasisTag tag) noexcept;

// 1/sqrt(1 + R^{2n}), the normalisation of e_n. Stable for either sign of n.
double hardy_scale(int n, double R) noexcept;
// R^n/sqrt(1 + R^{2n}), the outer-circle modulus of f_n.
double complement_scale(int n, double R) noexcept;

// e_n(z) = z^n / sqrt(1 + R^{2n})
cplx hardy_basis_eval(int n, BoundaryPoint z, const AnnulusGeometry& geo);

// f_n(z) = R^n z^n / sqrt(1+R^{2n}) on C,  -z^n / (R^n sqrt(1+R^{2n})) on C0
cplx complement_basis_eval(int n, BoundaryPoint z, const AnnulusGeometry& geo);

// t_n with ||t_n z^n||_{B^2} = 1; logarithmic at n = -1.
double bergman_norm_const(int n, double R);

// A function on dA sampled on the geometry's two uniform circle grids.
struct BoundarySamples {
    std::vector<cplx> outer;
    std::vector<cplx> inner;
};

template <class F>
BoundarySamples sample_boundary(F&& fn, const AnnulusGeometry& geo) {
    const auto angles = circle_angles(geo.circle_samples());
    BoundarySamples s;
    s.outer.reserve(angles.size());
    s.inner.reserve(angles.size());
    for (double t : angles) s.outer.push_back(fn(BoundaryPoint{Component::Outer, t}));
    for (double t : angles) s.inner.push_back(fn(BoundaryPoint{Component::Inner, t}));
    return s;
}

BoundarySamples sample_hardy_basis(int n, const AnnulusGeometry& geo);
BoundarySamples sample_complement_basis(int n, const AnnulusGeometry& geo);

// sigma-inner product: angular mean over C plus angular mean over C0.
// Throws GeometryMismatch when either function is not on the geometry's grid.
cplx boundary_inner_product(const BoundarySamples& f, const BoundarySamples& g, const AnnulusGeometry& geo);

}  // namespace annulus
