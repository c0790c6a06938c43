#include "annulus/random.hpp"

#include <cmath>

namespace annulus {

double SymbolGenerator::uniform() {
    const std::uint64_t x = engine_();
    return 2.0 * std::ldexp(static_cast<double>(x >> 11), -53) - 1.0;
}

cplx SymbolGenerator::coefficient() {
    const double re = uniform();
    const double im = uniform();
    return {re, im};
}

CoefficientMap SymbolGenerator::terms(int lo, int hi) {
    CoefficientMap out;
    for (int n = lo; n <= hi; ++n) out[n] = coefficient();
    return out;
}

BoundarySymbol SymbolGenerator::boundary(int lo, int hi) {
    CoefficientMap outer = terms(lo, hi);
    CoefficientMap inner = terms(lo, hi);
    return BoundarySymbol::exact(std::move(outer), std::move(inner));
}

BoundarySymbol SymbolGenerator::inner_only(int lo, int hi) { return BoundarySymbol::exact({}, terms(lo, hi)); }

RadialProfile SymbolGenerator::profile(int degree) { return RadialProfile::polynomial(terms(0, degree)); }

PolarSymbol SymbolGenerator::polar(int band_lo, int band_hi, int degree) {
    std::map<int, RadialProfile> bands;
    for (int k = band_lo; k <= band_hi; ++k) bands.emplace(k, profile(degree));
    return PolarSymbol(std::move(bands));
}

}  // namespace annulus
