#pragma once

#include <filesystem>

#include "json.hpp"

#include "annulus/radial.hpp"
#include "annulus/symbols.hpp"

namespace annulus {

// {"repr":"exact","R":..,"coeffs_C":[[n,re,im],..],"coeffs_C0":[[n,re,im],..]}
// {"repr":"sampled","R":..,"values_C":[[re,im],..],"values_C0":[[re,im],..]}
// Coefficients on C0 are the Fourier coefficients of f(R e^{it}).
BoundarySymbol boundary_symbol_from_json(const nlohmann::json& j);
nlohmann::json boundary_symbol_to_json(const BoundarySymbol& f, double R);

// {"bands":[[k,[[m,re,im],..]],..]}, polynomial profiles only.
PolarSymbol polar_symbol_from_json(const nlohmann::json& j);
nlohmann::json polar_symbol_to_json(const PolarSymbol& f);

// A file holding either form; the "bands" key selects the polar one.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace annulus
