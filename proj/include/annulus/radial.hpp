#pragma once

#include <complex>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "annulus/fourier.hpp"
#include "annulus/geometry.hpp"

namespace annulus {

/// A function of r on [R, 1]: either a finite sum of integer powers
/// sum_m c_m r^m, or values at the nodes of a radial quadrature rule.
class RadialProfile {
public:
    RadialProfile() = default;  // the zero polynomial

    static RadialProfile polynomial(CoefficientMap powers);
    static RadialProfile monomial(int power, cplx c = 1.0) { return polynomial({{power, c}}); }
    static RadialProfile sampled(GaussRule rule, std::vector<cplx> values);

    bool is_polynomial() const noexcept { return std::holds_alternative<CoefficientMap>(repr_); }
    const CoefficientMap& powers() const;
    const GaussRule& rule() const;
    const std::vector<cplx>& values() const;

    // Polynomial profiles only.
    cplx operator()(double r) const;
    bool is_zero() const noexcept;

private:
    struct Samples {
        GaussRule rule;
        std::vector<cplx> values;
    };
    std::variant<CoefficientMap, Samples> repr_{CoefficientMap{}};
};

// Values of a polynomial profile at the nodes of `rule`.
RadialProfile sample_profile(const RadialProfile& poly, const GaussRule& rule);

// (1 - R^w)/w, continued by log(1/R) at w = 0. Entire in w.
cplx mellin_monomial(cplx w, double R);

/// Mellin transform over [R, 1]:  int_R^1 phi(r) r^{z-1} dr.
///
/// On [R, 1] with R > 0 every r^{z-1} is bounded, so the transform is
/// entire in z; polynomial profiles use the closed form term by term, sampled
/// profiles use the stored quadrature rule.
cplx mellin(const RadialProfile& phi, cplx z, double R);

// Real zeros of z -> mellin(phi, z) on [lo, hi]. Sign scan on a grid of
// step 0.25 followed by bisection to 1e-12. Throws PreconditionError for a
// sampled or identically zero profile.
std::vector<double> mellin_zero_locate(const RadialProfile& phi, double lo, double hi, double R);

struct MellinSample {
    double z;
    cplx value;
};

// Samples of the transform along z_j = n0 + step * j, j = 1..count.
std::vector<MellinSample> mellin_progression(const RadialProfile& phi, int n0, int step, int count, double R);

struct MellinReconstruction {
    CoefficientMap powers;  // c_0 .. c_d
    double condition;       // 2-norm condition number of the moment matrix
};

// Recovers a degree-d polynomial profile from d+1 transform values at
// distinct points. Throws SingularSystem when the moment matrix condition
// number exceeds 1e13.
MellinReconstruction mellin_poly_reconstruct(std::span<const MellinSample> values, int degree, double R);

/// A band-limited symbol on the annulus: f(r e^{it}) = sum_k f_k(r) e^{ikt}.
class PolarSymbol {
public:
    PolarSymbol() = default;
    explicit PolarSymbol(std::map<int, RadialProfile> bands);

    const std::map<int, RadialProfile>& bands() const noexcept { return bands_; }
    // Over nonzero bands only; {0,-1} when every band vanishes.
    std::pair<int, int> support() const;
    int top_degree() const { return support().second; }
    int bandwidth() const;
    bool is_zero() const { return support().second < support().first; }

private:
    std::map<int, RadialProfile> bands_;
};

}  // namespace annulus
