// Acceptance runner: one line per criterion, exit status 0 only when every
// selected criterion passes.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "annulus/bergman.hpp"
#include "annulus/errors.hpp"
#include "annulus/hardy.hpp"
#include "annulus/lab.hpp"
#include "annulus/random.hpp"
#include "annulus/reduction.hpp"
#include "oracles.hpp"

using namespace annulus;
namespace fs = std::filesystem;

namespace {

constexpr double R = 0.5;
constexpr int kCircle = 4096;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    // Upper-bound measurement.
    void bound(const std::string& what, double value, double tol) {
        const bool ok = value <= tol;
        pass = pass && ok;
        detail << (detail.tellp() > 0 ? "; " : "") << what << '=' << value << (ok ? " <= " : " > ") << tol;
    }
    // Lower-bound measurement.
    void floor(const std::string& what, double value, double tol) {
        const bool ok = value > tol;
        pass = pass && ok;
        detail << (detail.tellp() > 0 ? "; " : "") << what << '=' << value << (ok ? " > " : " <= ") << tol;
    }
    void expect(const std::string& what, bool ok) {
        pass = pass && ok;
        detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? " ok" : " MISMATCH");
    }
};

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Outcome basis_orthonormality() {
    Outcome o;
    const AnnulusGeometry geo(R, kCircle);
    std::vector<BoundarySamples> family;
    for (int n = -20; n <= 20; ++n) family.push_back(sample_hardy_basis(n, geo));
    for (int n = -20; n <= 20; ++n) family.push_back(sample_complement_basis(n, geo));
    double dev = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            dev = std::max(dev, std::abs(boundary_inner_product(family[i], family[j], geo) - (i == j ? 1.0 : 0.0)));
    o.bound("gram_deviation", dev, 1e-10);
    return o;
}

Outcome entry_formula_fidelity() {
    Outcome o;
    SymbolGenerator gen(2);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int b = 1 + t % 6;
        const auto f = gen.boundary(-b, b);
        const auto T = build_toeplitz_hardy(f, {-8, 8}, R);
        worst = std::max(worst, max_abs(T.entries - oracle::hardy_section(f.outer().terms(), f.inner().terms(), -8, 8,
                                                                          R, false, kCircle / 8)));
    }
    o.bound("closed_vs_quadrature", worst, 1e-10);
    return o;
}

Outcome identity_symbol() {
    Outcome o;
    const auto Th = build_toeplitz_hardy(BoundarySymbol::constant(1.0), {-32, 32}, R);
    o.bound("hardy", max_abs(Th.entries - Eigen::MatrixXcd::Identity(65, 65)), 1e-12);
    const auto Tb = build_bergman_toeplitz(PolarSymbol({{0, RadialProfile::monomial(0)}}), {-32, 32}, R);
    o.bound("bergman", max_abs(Tb.op.entries - Eigen::MatrixXcd::Identity(65, 65)), 1e-12);
    o.bound("bergman_n=-1", std::abs(Tb.op.at(-1, -1) - 1.0), 1e-12);
    return o;
}

Outcome conjugate_basis() {
    Outcome o;
    const AnnulusGeometry probe(R, 128);
    double pointwise = 0.0;
    for (int n = -10; n <= 10; ++n) {
        const auto [a, b] = conjugate_basis_coeffs(n, R);
        for (const Component comp : {Component::Outer, Component::Inner})
            for (double t : circle_angles(128)) {
                const BoundaryPoint z{comp, t};
                pointwise = std::max(pointwise, std::abs(std::conj(hardy_basis_eval(n, z, probe)) -
                                                         a * hardy_basis_eval(-n, z, probe) -
                                                         b * complement_basis_eval(-n, z, probe)));
            }
    }
    o.bound("pointwise", pointwise, 1e-12);
    double unit = 0.0;
    for (double r : {0.3, 0.5, 0.9})
        for (int n = -30; n <= 30; ++n) {
            const auto [a, b] = conjugate_basis_coeffs(n, r);
            unit = std::max(unit, std::abs(a * a + b * b - 1.0));
        }
    o.bound("alpha2+beta2-1", unit, 1e-14);
    return o;
}

Outcome semicommutator() {
    Outcome o;
    SymbolGenerator gen(5);
    double annulus = 0.0, disc = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto f = gen.boundary(-1 - t % 4, 1 + t % 4), g = gen.boundary(-4 + t % 4, 4 - t % 4);
        annulus = std::max(annulus, semicommutator_residual_annulus(f, g, {-32, 32}, R));
        const auto df = CircleFunction::exact(gen.terms(-4, 4)), dg = CircleFunction::exact(gen.terms(-4, 4));
        disc = std::max(disc, semicommutator_residual_disc(df, dg, 64));
    }
    o.bound("annulus", annulus, 1e-10);
    o.bound("disc", disc, 1e-10);
    return o;
}

Outcome reduction_diagram() {
    Outcome o;
    const AnnulusGeometry geo(R, kCircle);
    SymbolGenerator gen(6);
    double diagram = 0.0, perp = 0.0, range = 0.0;
    for (int t = 0; t < 10; ++t) {
        const int b = 1 + t % 6;
        const auto phi = gen.inner_only(-b, b);
        diagram = std::max(diagram, diagram_residual(phi, 24, geo).residual);
        const auto s = split_relation_residual(phi, 24, geo);
        perp = std::max(perp, s.perp_part);
        range = std::max(range, s.range_part);
    }
    o.bound("diagram", diagram, 1e-10);
    o.bound("split_perp", perp, 1e-10);
    o.bound("split_range", range, 1e-10);
    return o;
}

Outcome two_column_recovery() {
    Outcome o;
    SymbolGenerator gen(7);
    double worst = 0.0;
    bool zero_ok = true;
    const std::vector<std::pair<int, int>> columns{{0, 1}, {-3, 2}, {4, -4}, {-2, 3}, {1, -1}};
    for (int t = 0; t < 10; ++t) {
        const int b = 1 + t % 6;
        const auto f = gen.boundary(-b, b);
        const auto T = build_toeplitz_hardy(f, {-32, 32}, R);
        const auto [r, s] = columns[static_cast<std::size_t>(t) % columns.size()];
        const auto rec = column_zero_recover(T, r, s, R);
        for (int n = -b; n <= b; ++n) {
            const auto [a, c] = fourier_pair(f, n);
            const auto& got = rec.pairs.at(n);
            worst = std::max({worst, std::abs(got.first - a), std::abs(got.second - c)});
        }
        auto Z = T;
        Z.entries.col(r - Z.cols.lo).setZero();
        Z.entries.col(s - Z.cols.lo).setZero();
        for (const auto& [n, p] : column_zero_recover(Z, r, s, R).pairs)
            zero_ok = zero_ok && p.first == cplx(0.0) && p.second == cplx(0.0);
    }
    o.bound("roundtrip", worst, 1e-10);
    o.expect("zeroed_columns_recover_zero", zero_ok);
    return o;
}

Outcome mellin_module() {
    Outcome o;
    SymbolGenerator gen(8);
    double quad = 0.0;
    for (int d = 0; d <= 10; ++d) {
        const auto phi = gen.profile(d);
        for (int i = 0; i <= 30; ++i) {
            const double z = -5.0 + 0.5 * i;
            quad = std::max(quad, std::abs(mellin(phi, z, R) - oracle::mellin(phi, z, R)));
        }
    }
    o.bound("closed_vs_quadrature", quad, 1e-10);
    for (int d = 1; d <= 6; ++d) {
        double err = 0.0, cond = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            const auto target = gen.profile(d);
            const auto rec = mellin_poly_reconstruct(mellin_progression(target, 3, 2, d + 1, R), d, R);
            for (int m = 0; m <= d; ++m) err = std::max(err, std::abs(rec.powers.at(m) - target.powers().at(m)));
            cond = std::max(cond, rec.condition);
        }
        std::ostringstream name;
        name.precision(2);
        name << "roundtrip_d" << d << "(cond " << cond << ")";
        o.bound(name.str(), err, 1e-8);
    }
    return o;
}

cplx polar_eval(const PolarSymbol& f, double r, double t) {
    cplx s = 0.0;
    for (const auto& [k, prof] : f.bands()) s += prof(r) * std::polar(1.0, k * t);
    return s;
}

Outcome bergman_structure() {
    Outcome o;
    SymbolGenerator gen(9);
    bool single_band = true;
    for (int p = -4; p <= 4; ++p) {
        const auto s = build_bergman_toeplitz(PolarSymbol({{p, gen.profile(3)}}), {-8, 8}, R);
        for (int m = -8; m <= 8; ++m)
            for (int n = -8; n <= 8; ++n)
                if ((s.op.at(m, n) != cplx(0.0)) != (m - n == p)) single_band = false;
    }
    o.expect("single_band_one_subdiagonal", single_band);

    std::vector<double> t(17);
    for (int n = -8; n <= 8; ++n) t[static_cast<std::size_t>(n + 8)] = oracle::bergman_t(n, R);
    double worst = 0.0;
    for (int d = 0; d <= 6; ++d) {
        const auto f = gen.polar(-2, 2, d);
        const auto s = build_bergman_toeplitz(f, {-8, 8}, R);
        for (int m = -8; m <= 8; ++m)
            for (int n = -8; n <= 8; ++n) {
                const cplx q = t[static_cast<std::size_t>(n + 8)] * t[static_cast<std::size_t>(m + 8)] *
                               oracle::bergman_pair(
                                   [&](double r, double a) { return polar_eval(f, r, a) * std::pow(r, n) * std::polar(1.0, n * a); },
                                   [&](double r, double a) { return std::pow(r, m) * std::polar(1.0, m * a); }, R);
                worst = std::max(worst, std::abs(s.op.at(m, n) - q));
            }
    }
    o.bound("closed_vs_2d_quadrature", worst, 1e-10);

    const auto A = build_bergman_toeplitz(PolarSymbol({{0, gen.profile(4)}}), {-32, 32}, R).op.entries;
    const auto B = build_bergman_toeplitz(PolarSymbol({{0, gen.profile(6)}}), {-32, 32}, R).op.entries;
    o.bound("radial_commutator", max_abs(A * B - B * A), 0.0);
    return o;
}

Outcome zero_product_harnesses() {
    Outcome o;
    SymbolGenerator gen(10);
    double hardy_min = 1e300, hardy_ladder = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int bf = 1 + t % 4, bg = 4 - t % 4;
        const auto f = gen.boundary(-bf, bf), g = gen.boundary(-bg, bg);
        const auto r = zero_product_experiment_hardy(f, g, {-32, 32}, R);
        hardy_min = std::min(hardy_min, r.min_product_column_norm);
        for (double v : r.ladder_residuals) hardy_ladder = std::max(hardy_ladder, v);
    }
    o.floor("hardy_min_column_norm", hardy_min, 1e-6);
    o.bound("hardy_ladder", hardy_ladder, 1e-10);

    double berg_min = 1e300, berg_ladder = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int bf = 1 + t % 4, bg = 4 - t % 4;
        const auto f = gen.polar(-bf, bf, 3);
        std::map<int, RadialProfile> gb;
        for (int k = -bg; k < bg; ++k) gb.emplace(k, gen.profile(3));
        gb.emplace(bg, RadialProfile::monomial(t % 4, gen.coefficient()));
        const auto r = zero_product_experiment_bergman(f, PolarSymbol(std::move(gb)), {-24, 24}, R);
        berg_min = std::min(berg_min, r.min_product_column_norm);
        for (double v : r.ladder_residuals) berg_ladder = std::max(berg_ladder, v);
    }
    o.floor("bergman_min_column_norm", berg_min, 1e-6);
    o.bound("bergman_ladder", berg_ladder, 1e-10);
    return o;
}

Outcome hartman_calibration() {
    Outcome o;
    const std::vector<int> sizes{64, 128, 256, 512};
    const DecayThresholds th{};
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("annulus-acceptance-" + std::to_string(rd()));
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, Compactness>> cases{{"analytic", Compactness::DecayObserved},
                                                                 {"two-sided-constant", Compactness::DecayObserved},
                                                                 {"singular-inner", Compactness::NoDecay}};
    for (const auto& [name, expected] : cases) {
        const auto v = hankel_compactness_indicator(lab::reference_symbol(name, R, kCircle), sizes, R, th);
        o.expect(name + "=" + compactness_name(v.verdict), v.verdict == expected);

        const fs::path outer = dir / (name + "_decay.csv"), inner = dir / (name + "_decay_c0.csv");
        lab::write_decay_csv(v.outer, outer);
        lab::write_decay_csv(v.inner, inner);
        const auto ro = lab::read_decay_csv(outer), ri = lab::read_decay_csv(inner);
        const Compactness co = classify_decay(ro, th), ci = classify_decay(ri, th);
        const Compactness combined = (co == Compactness::NoDecay || ci == Compactness::NoDecay) ? Compactness::NoDecay
                                     : (co == Compactness::DecayObserved && ci == Compactness::DecayObserved)
                                         ? Compactness::DecayObserved
                                         : Compactness::Inconclusive;
        const fs::path again = dir / (name + "_again.csv");
        lab::write_decay_csv(ro, again);
        std::ifstream a(outer, std::ios::binary), b(again, std::ios::binary);
        const std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
        o.expect(name + "_reproduced_from_csv",
                 co == v.outer_verdict && ci == v.inner_verdict && combined == v.verdict && sa == sb);
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria{
    {1, "basis orthonormality", basis_orthonormality},
    {2, "entry-formula fidelity", entry_formula_fidelity},
    {3, "identity symbol sections", identity_symbol},
    {4, "conjugate-basis identity", conjugate_basis},
    {5, "semicommutator identity", semicommutator},
    {6, "reduction diagram and split relations", reduction_diagram},
    {7, "two-column recovery", two_column_recovery},
    {8, "Mellin transform and reconstruction", mellin_module},
    {9, "Bergman structure", bergman_structure},
    {10, "zero-product harnesses", zero_product_harnesses},
    {11, "Hartman indicator calibration", hartman_calibration},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria for the annulus laboratory"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-11)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    std::cout.precision(3);
    int failed = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "error: " << e.what();
        }
        if (!o.pass) ++failed;
        std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  ["
                  << o.detail.str() << "]" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
