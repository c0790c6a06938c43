#include "annulus/symbol_io.hpp"

#include <fstream>

#include "annulus/errors.hpp"

namespace annulus {

using nlohmann::json;

namespace {

CoefficientMap read_terms(const json& arr, const char* field) {
    if (!arr.is_array()) throw ConfigError(std::string(field) + ": expected an array of [n, re, im]");
    CoefficientMap out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& t = arr[i];
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number() || !t[2].is_number())
            throw ConfigError(std::string(field) + "[" + std::to_string(i) + "]: expected [n, re, im]");
        out[t[0].get<int>()] += cplx(t[1].get<double>(), t[2].get<double>());
    }
    return out;
}

std::vector<cplx> read_values(const json& arr, const char* field) {
    if (!arr.is_array()) throw ConfigError(std::string(field) + ": expected an array of [re, im]");
    std::vector<cplx> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& t = arr[i];
        if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_number())
            throw ConfigError(std::string(field) + "[" + std::to_string(i) + "]: expected [re, im]");
        out.emplace_back(t[0].get<double>(), t[1].get<double>());
    }
    return out;
}

json write_terms(const CoefficientMap& terms) {
    json arr = json::array();
    for (const auto& [n, c] : terms) arr.push_back({n, c.real(), c.imag()});
    return arr;
}

json write_values(const std::vector<cplx>& v) {
    json arr = json::array();
    for (cplx c : v) arr.push_back({c.real(), c.imag()});
    return arr;
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(std::string("missing field '") + key + "'");
    return *it;
}

}  // namespace

BoundarySymbol boundary_symbol_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("symbol: expected an object");
    const std::string repr = field(j, "repr").get<std::string>();
    if (repr == "exact") {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "repr" && it.key() != "R" && it.key() != "coeffs_C" && it.key() != "coeffs_C0")
                throw ConfigError("symbol: unknown field '" + it.key() + "'");
        return BoundarySymbol::exact(read_terms(field(j, "coeffs_C"), "coeffs_C"),
                                     read_terms(field(j, "coeffs_C0"), "coeffs_C0"));
    }
    if (repr == "sampled") {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "repr" && it.key() != "R" && it.key() != "values_C" && it.key() != "values_C0")
                throw ConfigError("symbol: unknown field '" + it.key() + "'");
        return BoundarySymbol::sampled(read_values(field(j, "values_C"), "values_C"),
                                       read_values(field(j, "values_C0"), "values_C0"));
    }
    throw ConfigError("symbol.repr: expected \"exact\" or \"sampled\", got \"" + repr + "\"");
}

json boundary_symbol_to_json(const BoundarySymbol& f, double R) {
    if (f.is_exact())
        return {{"repr", "exact"},
                {"R", R},
                {"coeffs_C", write_terms(f.outer().terms())},
                {"coeffs_C0", write_terms(f.inner().terms())}};
    return {{"repr", "sampled"},
            {"R", R},
            {"values_C", write_values(f.outer().values())},
            {"values_C0", write_values(f.inner().values())}};
}

PolarSymbol polar_symbol_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("polar symbol: expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "bands") throw ConfigError("polar symbol: unknown field '" + it.key() + "'");
    const json& bands = field(j, "bands");
    if (!bands.is_array()) throw ConfigError("bands: expected an array of [k, [[m, re, im], ..]]");
    std::map<int, RadialProfile> out;
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const auto& b = bands[i];
        if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer())
            throw ConfigError("bands[" + std::to_string(i) + "]: expected [k, [[m, re, im], ..]]");
        const int k = b[0].get<int>();
        if (out.count(k)) throw ConfigError("bands[" + std::to_string(i) + "]: duplicate band " + std::to_string(k));
        out.emplace(k, RadialProfile::polynomial(read_terms(b[1], "bands[].profile")));
    }
    return PolarSymbol(std::move(out));
}

json polar_symbol_to_json(const PolarSymbol& f) {
    json bands = json::array();
    for (const auto& [k, prof] : f.bands()) bands.push_back({k, write_terms(prof.powers())});
    return {{"bands", bands}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace annulus
