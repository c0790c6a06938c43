#include "annulus/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "annulus/errors.hpp"

namespace annulus {

QuasiHomogeneousImage quasi_homogeneous_apply(int p, const RadialProfile& f1, int n, double R) {
    const int out = p + n;
    if (f1.is_zero()) return {0.0, out};
    const double t = bergman_norm_const(out, R);
    return {t * t * mellin(f1, static_cast<double>(p + 2 * n + 2), R), out};
}

BergmanOperatorSection build_bergman_toeplitz(const PolarSymbol& f, IndexWindow window, double R) {
    BergmanOperatorSection s{TruncatedOperator(BasisTag::BergmanAnnulus, BasisTag::BergmanAnnulus, window, window), {}};
    int widest = 0;
    bool any_band = false;
    for (const auto& [k, prof] : f.bands()) {
        if (prof.is_zero()) continue;
        any_band = true;
        widest = std::max(widest, std::abs(k));
        if (std::abs(k) >= window.size()) continue;
        s.band_offsets.insert(k);
        for (int n = window.lo; n <= window.hi; ++n) {
            const int m = n + k;
            if (!window.contains(m)) continue;
            s.op.at(m, n) = bergman_norm_const(n, R) * bergman_norm_const(m, R) *
                            mellin(prof, static_cast<double>(m + n + 2), R);
        }
    }
    if (any_band && s.band_offsets.empty())
        throw WindowError("window of size " + std::to_string(window.size()) + " holds no band image", widest + 1);
    return s;
}

const char* n0_status_name(N0Status s) noexcept {
    switch (s) {
        case N0Status::Located: return "located";
        case N0Status::Unconstrained: return "unconstrained";
        case N0Status::Unverifiable: return "hypothesis unverifiable";
    }
    return "?";
}

BergmanN0 find_n0_bergman(const RadialProfile& gN, int N, double R, IndexWindow n_range) {
    if (gN.is_zero()) throw PreconditionError("identically zero profile");
    const double lo = 2.0 * n_range.lo + N + 2, hi = 2.0 * n_range.hi + N + 2;
    if (!gN.is_polynomial()) return {std::nullopt, N0Status::Unverifiable, lo, hi};
    const auto roots = mellin_zero_locate(gN, lo, hi, R);
    if (roots.empty()) return {std::nullopt, N0Status::Unconstrained, lo, hi};
    const double n_star = (roots.back() - N - 2) / 2.0;
    const double nearest = std::round(n_star);
    const double base = std::abs(n_star - nearest) <= 1e-9 ? nearest : std::floor(n_star);
    return {static_cast<int>(base) + 1, N0Status::Located, lo, hi};
}

BergmanZeroProductReport zero_product_experiment_bergman(const PolarSymbol& f, const PolarSymbol& g,
                                                         IndexWindow window, double R,
                                                         const ZeroProductOptions& opts) {
    for (const auto* sym : {&f, &g})
        for (const auto& [k, prof] : sym->bands())
            if (!prof.is_polynomial())
                throw PreconditionError("zero_product_experiment_bergman: polynomial profiles required");
    if (opts.ladder_steps < 0) throw std::invalid_argument("zero_product_experiment_bergman: negative ladder length");

    BergmanZeroProductReport rep;
    rep.f_zero = f.is_zero();
    rep.g_zero = g.is_zero();
    rep.top_degree_f = f.top_degree();
    rep.top_degree_g = g.top_degree();
    const int bw_f = f.bandwidth(), bw_g = g.bandwidth();
    rep.margin = bw_f + bw_g;
    const IndexWindow interior = window.interior(rep.margin);
    if (interior.empty())
        throw WindowError("window of size " + std::to_string(window.size()) + " leaves no interior at margin " +
                              std::to_string(rep.margin),
                          2 * rep.margin + 1);

    const auto Tf = build_bergman_toeplitz(f, window, R);
    const auto Tg = build_bergman_toeplitz(g, window, R);
    const auto product = compose(Tf.op, Tg.op);
    rep.product_column_norms = column_norms(product, interior);
    rep.min_product_column_norm = *std::min_element(rep.product_column_norms.begin(), rep.product_column_norms.end());
    const auto& norms = rep.product_column_norms;
    const bool product_vanishes = std::all_of(norms.begin(), norms.end(), [&](double v) { return v < opts.tolerance; });
    if (!rep.f_zero && !rep.g_zero && product_vanishes) rep.verdict = ZeroProductVerdict::Violation;

    if (rep.g_zero) return rep;

    const int N = rep.top_degree_g;
    rep.n0 = find_n0_bergman(g.bands().at(N), N, R, window);
    const int n0 = rep.n0.n0.value_or(window.lo);
    const int start = std::max(n0, window.lo + rep.margin);
    rep.ladder_start = start;
    const int L = opts.ladder_steps;
    if (start + N + L > window.hi)
        throw WindowError("window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                              "] cannot hold the ladder from " + std::to_string(start),
                          start + N + L - window.lo + 1);

    // z^m, lo <= m < start + N, as basis directions.
    const int count = std::max(0, start + N - window.lo);
    Eigen::MatrixXcd span = Eigen::MatrixXcd::Zero(window.size(), count);
    for (int i = 0; i < count; ++i) span(i, i) = 1.0;
    for (int l = 0; l <= L; ++l) {
        span.conservativeResize(Eigen::NoChange, span.cols() + 1);
        span.col(span.cols() - 1) = Tg.op.column(start + l);
        Eigen::VectorXcd target = Eigen::VectorXcd::Zero(window.size());
        target(start + N + l - window.lo) = 1.0;
        rep.ladder_residuals.push_back(projection_residual(span, target));
    }

    // l_k: smallest l >= max(0, M - k) with k + 2(n0 + N + l + 1) >= 1.
    if (!rep.f_zero) {
        const int M = rep.top_degree_f;
        for (const auto& [k, prof] : f.bands()) {
            if (prof.is_zero()) continue;
            int lk = std::max(0, M - k);
            while (k + 2 * (n0 + N + lk + 1) < 1) ++lk;
            for (int l = 0; l <= L; ++l) {
                const double z = k + 2.0 * (n0 + N + lk + 1) + 2.0 * l;
                rep.targets.push_back({k, z, mellin(prof, z, R)});
            }
        }
    }
    return rep;
}

}  // namespace annulus
