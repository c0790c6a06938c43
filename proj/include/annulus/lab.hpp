#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "annulus/operator.hpp"
#include "annulus/reduction.hpp"

namespace annulus::lab {

inline const std::vector<std::string> kExperiments{"gram",     "toeplitz-build",      "hankel-decay",
                                                   "identities", "mellin",            "zero-product-hardy",
                                                   "zero-product-bergman", "semicommutator"};

/// Everything a run depends on. Parsed from JSON; unknown fields are errors.
struct LabConfig {
    std::string experiment;
    double R = 0.5;
    IndexWindow window{-32, 32};
    int m_circle = 4096;
    int m_radial = 128;
    std::uint64_t seed = 1;
    double tolerance = 1e-10;
    int trials = 20;
    int bandwidth = 4;
    int ladder_steps = 8;
    int section_size = 24;                    // diagram / split windows
    std::vector<int> sizes{64, 128, 256, 512};  // decay ladder
    double eps = 0.5;
    std::string reference = "singular-inner";  // hankel-decay symbol when no file is given
    std::optional<std::filesystem::path> symbol_f;
    std::optional<std::filesystem::path> symbol_g;
    std::filesystem::path output = "lab-out";

    // Relative symbol paths resolve against `base_dir`.
    static LabConfig parse(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
    static LabConfig load(const std::filesystem::path& path);
    nlohmann::json echo() const;
};

/// One row of results.csv. Checks whose id ends in "_floor" are lower bounds
/// (pass iff value > tolerance); every other check passes iff value <= tolerance.
struct Check {
    std::string check;
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

struct ExperimentReport {
    std::string experiment;
    nlohmann::json config;
    std::vector<Check> checks;
    nlohmann::json details = nlohmann::json::object();
    std::vector<std::string> files;
    double duration_s = 0.0;

    bool all_pass() const;
    nlohmann::json to_json() const;
};

// Runs the configured experiment and writes every output into config.output.
ExperimentReport run(const LabConfig& config);

void write_results_csv(const std::vector<Check>& checks, const std::filesystem::path& path);

// "size,index,sigma", 17 significant digits.
void write_decay_csv(const DecayProfile& profile, const std::filesystem::path& path);
DecayProfile read_decay_csv(const std::filesystem::path& path);

inline const std::vector<std::string> kReferenceSymbols{"singular-inner", "analytic", "two-sided-constant",
                                                        "conj-z"};

// Built-in hankel-decay symbols. "singular-inner" is sampled on m_circle
// points: exp(i cot(t/2)) on C (1 at t = 0) and zero on C0. "analytic" is z^2,
// "two-sided-constant" is 1 on C and -1 on C0, "conj-z" is conj(z).
BoundarySymbol reference_symbol(const std::string& name, double R, int m_circle);

}  // namespace annulus::lab
