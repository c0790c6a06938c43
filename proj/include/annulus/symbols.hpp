#pragma once

#include <complex>
#include <utility>
#include <variant>
#include <vector>

#include "annulus/fourier.hpp"
#include "annulus/geometry.hpp"

namespace annulus {

// Coefficients below this fraction of the largest one count as zero.
inline constexpr double kZeroTolerance = 1e-12;

/// A function on one circle: either a finite trigonometric polynomial
/// (exact coefficients) or samples on a uniform grid.
class CircleFunction {
public:
    CircleFunction() = default;  // the exact zero function

    static CircleFunction exact(CoefficientMap terms);
    static CircleFunction sampled(std::vector<cplx> values);

    bool is_exact() const noexcept { return std::holds_alternative<CoefficientMap>(repr_); }
    const CoefficientMap& terms() const;
    const std::vector<cplx>& values() const;

    // Fourier coefficient of index n. On samples this is a direct sum and
    // throws AliasingError once |n| >= m/2.
    cplx coefficient(int n) const;
    // Coefficients for indices lo..hi; the sampled path runs one FFT.
    std::vector<cplx> coefficients(int lo, int hi) const;

    // Values on the uniform grid of m points.
    std::vector<cplx> samples(int m) const;

    // Largest coefficient modulus (exact) or largest sample modulus.
    double scale() const noexcept;

    // Degree range of the coefficients above the zero tolerance; exact only.
    // An all-zero function reports {0, -1}.
    std::pair<int, int> support() const;

    CircleFunction conj() const;

private:
    std::variant<CoefficientMap, std::vector<cplx>> repr_{CoefficientMap{}};
};

CircleFunction multiply(const CircleFunction& a, const CircleFunction& b);

/// A symbol on dA = C u C0, held as its two circle functions. The inner
/// function is parametrised by angle: inner(t) = f(R e^{it}), so its
/// coefficients are the C0 Fourier coefficients of f.
class BoundarySymbol {
public:
    BoundarySymbol() = default;
    BoundarySymbol(CircleFunction outer, CircleFunction inner);

    static BoundarySymbol exact(CoefficientMap outer, CoefficientMap inner);
    static BoundarySymbol sampled(std::vector<cplx> outer, std::vector<cplx> inner);
    // Laurent polynomial sum c_n z^n restricted to both circles.
    static BoundarySymbol analytic(const CoefficientMap& laurent, double R);
    static BoundarySymbol constant(cplx c) { return exact({{0, c}}, {{0, c}}); }

    const CircleFunction& outer() const noexcept { return outer_; }
    const CircleFunction& inner() const noexcept { return inner_; }
    bool is_exact() const noexcept { return outer_.is_exact(); }

    double scale() const noexcept;
    // Exact only: degree range over both circles; {0,-1} for the zero symbol.
    std::pair<int, int> support() const;
    int top_degree() const { return support().second; }
    int low_degree() const { return support().first; }
    // max |n| over nonzero coefficient pairs.
    int bandwidth() const;
    bool is_zero() const;

    BoundarySymbol conj() const;

private:
    CircleFunction outer_;
    CircleFunction inner_;
};

// (f_C(n), f_C0(n))
std::pair<cplx, cplx> fourier_pair(const BoundarySymbol& f, int n);

// Fourier pairs for a contiguous index range, one transform per circle.
struct FourierTable {
    int lo = 0;
    std::vector<cplx> outer;
    std::vector<cplx> inner;

    std::pair<cplx, cplx> operator()(int n) const {
        const auto i = static_cast<std::size_t>(n - lo);
        return {outer.at(i), inner.at(i)};
    }
};

FourierTable fourier_table(const BoundarySymbol& f, int lo, int hi);

// Pointwise product; exact symbols only.
BoundarySymbol multiply(const BoundarySymbol& f, const BoundarySymbol& g);

// Samples of f on the geometry's grids.
BoundarySamples sample_symbol(const BoundarySymbol& f, const AnnulusGeometry& geo);

struct Pullbacks {
    CircleFunction outer;  // phi o pi,   pi(z) = z
    CircleFunction inner;  // phi o pi0,  pi0(z) = R/z
};

// On the unit circle pi0(e^{it}) = R e^{-it}, so the inner pullback reverses
// the C0 coefficient indices (exact) or the sample order (sampled).
Pullbacks pullback_symbols(const BoundarySymbol& f, double R);

}  // namespace annulus
