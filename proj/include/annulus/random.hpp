#pragma once

#include <cstdint>
#include <random>

#include "annulus/radial.hpp"
#include "annulus/symbols.hpp"

namespace annulus {

/// Seeded source of random symbols. The stream is the 64-bit LCG
/// x <- 6364136223846793005 x + 1442695040888963407 (mod 2^64) started at the
/// seed; each draw maps the top 53 bits of the state to [-1, 1). A complex
/// coefficient takes the real part first. Symbols are filled band by band and
/// degree by degree, both ascending; boundary symbols fill C before C0.
class SymbolGenerator {
public:
    using Engine = std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0>;

    explicit SymbolGenerator(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    cplx coefficient();

    CoefficientMap terms(int lo, int hi);
    // Exact symbol with degrees lo..hi on both circles.
    BoundarySymbol boundary(int lo, int hi);
    // Exact symbol that vanishes on C, degrees lo..hi on C0.
    BoundarySymbol inner_only(int lo, int hi);
    // Polynomial sum_{m=0}^{degree} c_m r^m.
    RadialProfile profile(int degree);
    PolarSymbol polar(int band_lo, int band_hi, int degree);

private:
    Engine engine_;
};

}  // namespace annulus
