#include "annulus/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "annulus/errors.hpp"

namespace annulus {

namespace {

cplx toeplitz_from_pair(std::pair<cplx, cplx> p, int j, int k, double R) {
    return hardy_scale(j, R) * hardy_scale(k, R) * p.first +
           complement_scale(j, R) * complement_scale(k, R) * p.second;
}

void require_exact(const BoundarySymbol& f, const char* who) {
    if (!f.is_exact()) throw PreconditionError(std::string(who) + ": exact symbols required");
}

}  // namespace

cplx toeplitz_entry(const BoundarySymbol& f, int j, int k, double R) {
    return toeplitz_from_pair(fourier_pair(f, j - k), j, k, R);
}

TruncatedOperator build_toeplitz_hardy(const BoundarySymbol& f, IndexWindow window, double R) {
    TruncatedOperator T(BasisTag::HardyAnnulus, BasisTag::HardyAnnulus, window, window);
    const int reach = window.hi - window.lo;
    const FourierTable table = fourier_table(f, -reach, reach);
    for (int k = window.lo; k <= window.hi; ++k)
        for (int j = window.lo; j <= window.hi; ++j) T.at(j, k) = toeplitz_from_pair(table(j - k), j, k, R);
    return T;
}

TruncatedOperator build_hankel_annulus(const BoundarySymbol& f, IndexWindow rows, IndexWindow cols, double R) {
    TruncatedOperator H(BasisTag::Complement, BasisTag::HardyAnnulus, rows, cols);
    const FourierTable table = fourier_table(f, rows.lo - cols.hi, rows.hi - cols.lo);
    for (int k = cols.lo; k <= cols.hi; ++k)
        for (int j = rows.lo; j <= rows.hi; ++j) {
            const auto [fc, fc0] = table(j - k);
            H.at(j, k) = complement_scale(j, R) * hardy_scale(k, R) * fc -
                         hardy_scale(j, R) * complement_scale(k, R) * fc0;
        }
    return H;
}

RecoveredPairs column_zero_recover(const TruncatedOperator& T, int r, int s, double R) {
    if (T.row_tag != BasisTag::HardyAnnulus || T.col_tag != BasisTag::HardyAnnulus)
        throw PreconditionError("column_zero_recover: expects a Hardy Toeplitz section");
    if (!T.cols.contains(r) || !T.cols.contains(s))
        throw WindowError("column_zero_recover: columns " + std::to_string(r) + ", " + std::to_string(s) +
                              " outside the section",
                          std::max(std::abs(r), std::abs(s)) * 2 + 1);
    if (r == s) throw SingularSystem("column_zero_recover: the two columns coincide", HUGE_VAL);

    RecoveredPairs out;
    const int lo = T.rows.lo - std::max(r, s);
    const int hi = T.rows.hi - std::min(r, s);
    for (int n = lo; n <= hi; ++n) {
        const int m = r + n, t = s + n;
        if (!T.rows.contains(m) || !T.rows.contains(t)) {
            out.skipped.push_back(n);
            continue;
        }
        // f_C + R^{m+r} f_C0 = a_{m,r} / (s_m s_r), and the same for (t, s).
        const cplx b1 = T.at(m, r) / (hardy_scale(m, R) * hardy_scale(r, R));
        const cplx b2 = T.at(t, s) / (hardy_scale(t, R) * hardy_scale(s, R));
        const double p1 = std::pow(R, m + r), p2 = std::pow(R, t + s);
        const double det = p2 - p1;
        const cplx fc0 = (b2 - b1) / det;
        const cplx fc = (p2 * b1 - p1 * b2) / det;
        out.pairs.emplace(n, std::make_pair(fc, fc0));
    }
    return out;
}

std::optional<int> find_n0_hardy(const BoundarySymbol& g, int N, double R) {
    const auto [a, b] = fourier_pair(g, N);
    const double floor_abs = kZeroTolerance * g.scale();
    const bool a_zero = std::abs(a) <= floor_abs, b_zero = std::abs(b) <= floor_abs;
    if (a_zero && b_zero) throw PreconditionError("N is not the top degree: both degree-N coefficients vanish");
    if (a_zero || b_zero) return std::nullopt;

    // a + R^{2n+N} b = 0 needs R^{2n+N} = -a/b > 0.
    const cplx x = -a / b;
    if (std::abs(x.imag()) > 1e-12 * std::abs(x) || x.real() <= 0.0) return std::nullopt;
    const double n_star = (std::log(x.real()) / std::log(R) - N) / 2.0;
    const double nearest = std::round(n_star);
    const double base = std::abs(n_star - nearest) <= 1e-9 ? nearest : std::floor(n_star);
    return static_cast<int>(base) + 1;
}

HardyZeroProductReport zero_product_experiment_hardy(const BoundarySymbol& f, const BoundarySymbol& g,
                                                     IndexWindow window, double R, const ZeroProductOptions& opts) {
    require_exact(f, "zero_product_experiment_hardy");
    require_exact(g, "zero_product_experiment_hardy");
    if (opts.ladder_steps < 0) throw std::invalid_argument("zero_product_experiment_hardy: negative ladder length");

    HardyZeroProductReport rep;
    rep.f_zero = f.is_zero();
    rep.g_zero = g.is_zero();
    const int bw_f = f.bandwidth(), bw_g = g.bandwidth();
    rep.margin = bw_f + bw_g;
    rep.top_degree_f = f.top_degree();
    rep.top_degree_g = g.top_degree();
    if (!rep.f_zero) rep.k0 = f.low_degree();
    rep.truncation_degree = window.lo - window.hi;

    const IndexWindow interior = window.interior(rep.margin);
    if (interior.empty())
        throw WindowError("window of size " + std::to_string(window.size()) + " leaves no interior at margin " +
                              std::to_string(rep.margin),
                          2 * rep.margin + 1);

    const TruncatedOperator Tf = build_toeplitz_hardy(f, window, R);
    const TruncatedOperator Tg = build_toeplitz_hardy(g, window, R);
    const TruncatedOperator product = compose(Tf, Tg);

    rep.product_column_norms = column_norms(product, interior);
    rep.min_product_column_norm = *std::min_element(rep.product_column_norms.begin(), rep.product_column_norms.end());
    const auto& norms = rep.product_column_norms;
    const bool product_vanishes =
        std::all_of(norms.begin(), norms.end(), [&](double v) { return v < opts.tolerance; });
    if (!rep.f_zero && !rep.g_zero && product_vanishes) rep.verdict = ZeroProductVerdict::Violation;

    if (rep.g_zero) return rep;

    const int N = rep.top_degree_g;
    rep.n0 = find_n0_hardy(g, N, R);
    rep.n0_negative = rep.n0 && *rep.n0 < 0;
    const int start = std::max(rep.n0.value_or(window.lo), window.lo + rep.margin);
    rep.ladder_start = start;
    const int L = opts.ladder_steps;
    const int top_row = start + N + L + bw_f;
    if (top_row > window.hi)
        throw WindowError("window [" + std::to_string(window.lo) + ", " + std::to_string(window.hi) +
                              "] cannot hold the ladder from " + std::to_string(start),
                          top_row - window.lo + 1);

    // T_f(z^m) for lo + bw_f <= m < start + N: every such column is complete inside the window.
    const int first = window.lo + bw_f;
    const int count = std::max(0, start + N - first);
    Eigen::MatrixXcd base(window.size(), count);
    for (int i = 0; i < count; ++i) base.col(i) = Tf.column(first + i);

    Eigen::MatrixXcd augmented = base;
    for (int l = 0; l <= L; ++l) {
        augmented.conservativeResize(Eigen::NoChange, augmented.cols() + 1);
        augmented.col(augmented.cols() - 1) = product.column(start + l);
        const Eigen::VectorXcd target = Tf.column(start + N + l);
        rep.ladder_residuals.push_back(projection_residual(augmented, target));
        rep.conditional_residuals.push_back(projection_residual(base, target));
    }
    return rep;
}

}  // namespace annulus
