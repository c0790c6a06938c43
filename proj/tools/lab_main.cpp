#include <iostream>

#include "CLI11.hpp"

#include "annulus/errors.hpp"
#include "annulus/lab.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Finite-section Toeplitz/Hankel laboratory on the annulus"};
    std::string experiment;
    std::string config_path;
    std::string out_dir;
    app.add_option("experiment", experiment, "Experiment to run")
        ->required()
        ->check(CLI::IsMember(annulus::lab::kExperiments));
    app.add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory (overrides the config)");
    CLI11_PARSE(app, argc, argv);

    try {
        auto cfg = annulus::lab::LabConfig::load(config_path);
        if (!cfg.experiment.empty() && cfg.experiment != experiment)
            throw annulus::ConfigError("config.experiment: '" + cfg.experiment + "' does not match the command '" +
                                       experiment + "'");
        cfg.experiment = experiment;
        if (!out_dir.empty()) cfg.output = out_dir;

        const auto report = annulus::lab::run(cfg);
        int failed = 0;
        for (const auto& c : report.checks)
            if (!c.pass) {
                ++failed;
                std::cerr << "FAIL " << c.check << ' ' << c.name << ": " << c.value << " (tolerance " << c.tolerance
                          << ")\n";
            }
        std::cout << experiment << ": " << report.checks.size() - failed << '/' << report.checks.size()
                  << " checks passed, outputs in " << cfg.output.string() << '\n';
        return failed == 0 ? 0 : 1;
    } catch (const annulus::ConfigError& e) {
        std::cerr << "lab: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "lab: " << experiment << ": " << e.what() << '\n';
        return 3;
    }
}
