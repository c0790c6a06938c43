#include <doctest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "annulus/errors.hpp"
#include "annulus/lab.hpp"
#include "annulus/plot.hpp"
#include "annulus/reduction.hpp"
#include "annulus/symbol_io.hpp"

using namespace annulus;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("annulus-test-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

boost::property_tree::ptree parse_svg(const std::string& text) {
    std::istringstream in(text);
    boost::property_tree::ptree tree;
    boost::property_tree::read_xml(in, tree);
    return tree;
}

std::size_t count_children(const boost::property_tree::ptree& node, const std::string& tag) {
    std::size_t n = 0;
    for (const auto& [name, child] : node) {
        if (name == tag) ++n;
        n += count_children(child, tag);
    }
    return n;
}

}  // namespace

TEST_CASE("config parsing") {
    const auto d = lab::LabConfig::parse(json::object());
    CHECK(d.R == 0.5);
    CHECK(d.window.lo == -32);
    CHECK(d.window.hi == 32);
    CHECK(d.m_circle == 4096);
    CHECK(d.sizes == std::vector<int>{64, 128, 256, 512});

    const auto c = lab::LabConfig::parse(
        {{"experiment", "gram"}, {"R", 0.3}, {"window", {-4, 6}}, {"symbols", {{"f", "f.json"}}}}, "/base");
    CHECK(c.experiment == "gram");
    CHECK(c.window.size() == 11);
    CHECK(*c.symbol_f == fs::path("/base/f.json"));

    auto message = [](const json& j) {
        try {
            lab::LabConfig::parse(j);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message({{"colour", 1}}).find("config.colour") != std::string::npos);
    CHECK(message({{"R", 1.5}}).find("config.R") != std::string::npos);
    CHECK(message({{"window", {3}}}).find("config.window") != std::string::npos);
    CHECK(message({{"m_circle", 100}}).find("config.m_circle") != std::string::npos);
    CHECK(message({{"sizes", {64, 32, 128}}}).find("config.sizes") != std::string::npos);
    CHECK(message({{"experiment", "nope"}}).find("config.experiment") != std::string::npos);
    CHECK(message({{"symbols", {{"h", "x"}}}}).find("config.symbols.h") != std::string::npos);
    CHECK(message({{"trials", "many"}}).find("config.trials") != std::string::npos);
}

TEST_CASE("config echo parses back to the same config") {
    const auto c = lab::LabConfig::parse({{"experiment", "mellin"}, {"seed", 99}, {"eps", 0.25}});
    const auto back = lab::LabConfig::parse(c.echo());
    CHECK(back.echo() == c.echo());
}

TEST_CASE("decay CSV round trip is exact") {
    TempDir tmp;
    const auto phi = lab::reference_symbol("singular-inner", 0.5, 1024);
    const auto v = hankel_compactness_indicator(phi, {16, 32, 64}, 0.5);
    lab::write_decay_csv(v.outer, tmp.path / "a.csv");
    const auto back = lab::read_decay_csv(tmp.path / "a.csv");
    CHECK(back.sizes == v.outer.sizes);
    CHECK(back.singular_values == v.outer.singular_values);
    lab::write_decay_csv(back, tmp.path / "b.csv");
    CHECK(slurp(tmp.path / "a.csv") == slurp(tmp.path / "b.csv"));
    CHECK(classify_decay(back) == classify_decay(v.outer));

    std::ofstream(tmp.path / "bad.csv") << "size,index,sigma\n16,1,0.5\n";
    CHECK_THROWS_AS(lab::read_decay_csv(tmp.path / "bad.csv"), Error);
}

TEST_CASE("results CSV format") {
    TempDir tmp;
    lab::write_results_csv({{"ladder_residual", "trial_00", 1e-12, 1e-10, true}}, tmp.path / "r.csv");
    CHECK(slurp(tmp.path / "r.csv") == "check,name,value,tolerance,pass\nladder_residual,trial_00,9.9999999999999998e-13,"
                                       "1e-10,true\n");
}

TEST_CASE("decay plot") {
    const auto rank_one = hankel_decay_profile(CircleFunction::exact({{-1, 1.0}}), {8, 16, 32});
    const std::string svg = render_decay_svg(rank_one, "conj(z) <rank one>");
    const auto tree = parse_svg(svg);
    CHECK(tree.count("svg") == 1);
    CHECK(count_children(tree, "polyline") == 3);
    CHECK(svg.find("&lt;rank one&gt;") != std::string::npos);

    const auto decaying = hankel_decay_profile(CircleFunction::exact({{-1, 1.0}, {-2, 0.5}, {-3, 0.25}, {-7, 0.1}}),
                                               {8, 16, 32, 64});
    CHECK_NOTHROW(parse_svg(render_decay_svg(decaying, "compact")));

    CHECK_THROWS_AS(render_decay_svg(DecayProfile{}, "empty"), PreconditionError);

    TempDir tmp;
    emit_plot(rank_one, tmp.path / "p.svg");
    CHECK_NOTHROW(parse_svg(slurp(tmp.path / "p.svg")));
}

TEST_CASE("reference symbols") {
    for (const auto& name : lab::kReferenceSymbols) CHECK_NOTHROW(lab::reference_symbol(name, 0.5, 256));
    CHECK_THROWS_AS(lab::reference_symbol("circle", 0.5, 256), ConfigError);
}

TEST_CASE("run: gram with defaults") {
    TempDir tmp;
    auto cfg = lab::LabConfig::parse({{"experiment", "gram"}});
    cfg.output = tmp.path;
    const auto rep = lab::run(cfg);
    CHECK(rep.all_pass());
    CHECK(fs::exists(tmp.path / "results.csv"));
    const auto j = json::parse(slurp(tmp.path / "report.json"));
    CHECK(j["experiment"] == "gram");
    CHECK(j["all_pass"] == true);
    CHECK(j["config"]["R"] == 0.5);
}

TEST_CASE("run: identities with the constant symbol") {
    TempDir tmp;
    std::ofstream(tmp.path / "one.json") << boundary_symbol_to_json(BoundarySymbol::constant(1.0), 0.5).dump();
    auto cfg = lab::LabConfig::parse({{"experiment", "identities"}, {"symbols", {{"f", "one.json"}}}}, tmp.path);
    cfg.output = tmp.path / "out";
    const auto rep = lab::run(cfg);
    CHECK(rep.all_pass());
    for (const auto& c : rep.checks)
        if (c.check == "diagram_residual" || c.check == "split_perp_part" || c.check == "split_range_part")
            CHECK(c.value <= 1e-14);
}

TEST_CASE("run: hankel-decay records a NoDecay verdict without failing") {
    TempDir tmp;
    auto cfg = lab::LabConfig::parse({{"experiment", "hankel-decay"}});
    cfg.output = tmp.path;
    const auto rep = lab::run(cfg);
    CHECK(rep.all_pass());
    CHECK(rep.details["verdict"] == "NoDecay");
    for (const char* f : {"decay.csv", "decay_c0.csv", "decay.svg", "decay_c0.svg", "results.csv", "report.json"})
        CHECK(fs::exists(tmp.path / f));
    CHECK_NOTHROW(parse_svg(slurp(tmp.path / "decay.svg")));
}

TEST_CASE("run: floor checks are lower bounds") {
    TempDir tmp;
    auto cfg = lab::LabConfig::parse({{"experiment", "zero-product-hardy"}, {"trials", 2}});
    cfg.output = tmp.path;
    const auto rep = lab::run(cfg);
    bool saw_floor = false;
    for (const auto& c : rep.checks)
        if (c.check == "product_norm_floor") {
            saw_floor = true;
            CHECK(c.pass == (c.value > c.tolerance));
        }
    CHECK(saw_floor);
    CHECK(rep.all_pass());
}
