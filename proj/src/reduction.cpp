#include "annulus/reduction.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "annulus/errors.hpp"
#include "annulus/kernels.hpp"

namespace annulus {

namespace {

// Coefficients phi(lo..hi) addressed by index.
struct CircleTable {
    int lo;
    std::vector<cplx> c;
    cplx operator()(int n) const { return c.at(static_cast<std::size_t>(n - lo)); }
};

CircleTable circle_table(const CircleFunction& phi, int lo, int hi) { return {lo, phi.coefficients(lo, hi)}; }

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double unitarity_defect(const Eigen::MatrixXcd& u) {
    return max_abs(u.adjoint() * u - Eigen::MatrixXcd::Identity(u.cols(), u.cols()));
}

// Angular mean of a * conj(b) on one circle grid.
cplx circle_mean(std::span<const cplx> a, std::span<const cplx> b) {
    return kernels::dot_conj(a, b) / static_cast<double>(a.size());
}

std::vector<cplx> circle_exponential(int n, std::span<const double> angles) {
    std::vector<cplx> v(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i) v[i] = std::polar(1.0, n * angles[i]);
    return v;
}

// u_n(R e^{it}) = e^{-int}: the image of z^n under composition with the inverse of pi0.
cplx inner_basis_eval(int n, double angle) { return std::polar(1.0, -n * angle); }

// pi0(e^{is}) = R e^{-is}, as an angle on C0.
double pi0_angle(double s) { return -s; }

// pi0^{-1}(R e^{it}) = e^{-it}, as an angle on T.
double pi0_inverse_angle(double t) { return -t; }

Eigen::MatrixXcd interior_block(const Eigen::MatrixXcd& m, int margin) {
    const auto n = m.rows() - 2 * margin;
    if (n <= 0) return {};
    return m.block(margin, margin, n, n);
}

}  // namespace

TruncatedOperator build_disc_toeplitz(const CircleFunction& phi, int size) {
    if (size < 1) throw WindowError("disc section needs a positive size", 1);
    TruncatedOperator T(BasisTag::DiscHardy, BasisTag::DiscHardy, IndexWindow::first(size), IndexWindow::first(size));
    const CircleTable c = circle_table(phi, -(size - 1), size - 1);
    for (int k = 0; k < size; ++k)
        for (int j = 0; j < size; ++j) T.at(j, k) = c(j - k);
    return T;
}

TruncatedOperator build_disc_hankel(const CircleFunction& phi, int rows, int cols) {
    if (rows < 1 || cols < 1) throw WindowError("disc section needs positive sizes", 1);
    TruncatedOperator H(BasisTag::DiscComplement, BasisTag::DiscHardy, IndexWindow::first(rows),
                        IndexWindow::first(cols));
    const CircleTable c = circle_table(phi, -(rows + cols - 1), -1);
    for (int k = 0; k < cols; ++k)
        for (int j = 0; j < rows; ++j) H.at(j, k) = c(-(j + 1) - k);
    return H;
}

ConjugateCoeffs conjugate_basis_coeffs(int n, double R) noexcept {
    const double s = hardy_scale(n, R), c = complement_scale(n, R);
    return {2.0 * s * c, (s - c) * (s + c)};
}

double t_diag(int n, double R) noexcept {
    if (n == 0) return 0.0;
    // Odd in n; R^{|n|} keeps the evaluation bounded.
    const double p = std::pow(R, std::abs(n));
    const double v = 2.0 * p / (1.0 - p * p);
    return n > 0 ? v : -v;
}

DiagramCheck diagram_residual(const BoundarySymbol& phi, int window, const AnnulusGeometry& geo) {
    if (window < 1) throw WindowError("diagram_residual: window must be positive", 1);
    const int m = geo.circle_samples();
    const auto angles = circle_angles(m);
    const std::vector<cplx> phi_inner = phi.inner().samples(m);

    // H^{Y0}: u_k -> sum_{j} <phi u_k, u_{-(j+1)}> u_{-(j+1)}
    Eigen::MatrixXcd hy0(window, window);
    std::vector<cplx> prod(static_cast<std::size_t>(m)), basis(static_cast<std::size_t>(m));
    for (int k = 0; k < window; ++k) {
        for (int i = 0; i < m; ++i) basis[i] = inner_basis_eval(k, angles[i]);
        kernels::multiply(phi_inner, basis, prod);
        for (int j = 0; j < window; ++j) {
            for (int i = 0; i < m; ++i) basis[i] = inner_basis_eval(-(j + 1), angles[i]);
            hy0(j, k) = circle_mean(prod, basis);
        }
    }

    // U0: u_{-(b+1)} -> (u_{-(b+1)} o pi0) in the basis z^{-(a+1)}.
    Eigen::MatrixXcd u0(window, window);
    for (int b = 0; b < window; ++b) {
        std::vector<cplx> moved(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) moved[i] = inner_basis_eval(-(b + 1), pi0_angle(angles[i]));
        for (int a = 0; a < window; ++a) u0(a, b) = circle_mean(moved, circle_exponential(-(a + 1), angles));
    }

    // pi0^{-1}: z^b -> z^b o pi0^{-1} in the basis u_a.
    Eigen::MatrixXcd pinv(window, window);
    for (int b = 0; b < window; ++b) {
        std::vector<cplx> moved(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) moved[i] = std::polar(1.0, b * pi0_inverse_angle(angles[i]));
        for (int a = 0; a < window; ++a) {
            for (int i = 0; i < m; ++i) basis[i] = inner_basis_eval(a, angles[i]);
            pinv(a, b) = circle_mean(moved, basis);
        }
    }

    const Eigen::MatrixXcd left = u0 * hy0 * pinv;
    const auto pulled = pullback_symbols(phi, geo.inner_radius());
    const TruncatedOperator right = build_disc_hankel(pulled.inner, window, window);
    return {max_abs(left - right.entries), unitarity_defect(u0), unitarity_defect(pinv)};
}

SplitResiduals split_relation_residual(const BoundarySymbol& phi, int window, const AnnulusGeometry& geo) {
    if (window < 1) throw WindowError("split_relation_residual: window must be positive", 1);
    const double R = geo.inner_radius();
    const int m = geo.circle_samples();
    const auto angles = circle_angles(m);
    const std::vector<cplx> phi_inner = phi.inner().samples(m);
    const int W = window;
    const IndexWindow rows{-W, W};

    // v_p = (R/z)^p on both circles.
    auto v_samples = [&](int p) {
        return sample_boundary(
            [&](BoundaryPoint z) {
                const double scale = z.component == Component::Outer ? std::pow(R, p) : 1.0;
                return scale * std::polar(1.0, -p * z.angle);
            },
            geo);
    };
    std::vector<BoundarySamples> e_samples;
    for (int n = rows.lo; n <= rows.hi; ++n) e_samples.push_back(sample_hardy_basis(n, geo));

    Eigen::MatrixXcd perp = Eigen::MatrixXcd::Zero(rows.size(), W);   // rows f_j
    Eigen::MatrixXcd range = Eigen::MatrixXcd::Zero(rows.size(), W);  // rows e_j
    Eigen::MatrixXcd t_perp = Eigen::MatrixXcd::Zero(rows.size(), W);
    std::vector<cplx> prod(static_cast<std::size_t>(m)), basis(static_cast<std::size_t>(m));
    for (int k = 0; k < W; ++k) {
        for (int i = 0; i < m; ++i) basis[i] = inner_basis_eval(k, angles[i]);
        kernels::multiply(phi_inner, basis, prod);

        // conj(y2) = sum_{q <= -1} conj(a_q) v_{-q}, y2 = P_{Y0 perp}(phi u_k).
        BoundarySamples y2_conj{std::vector<cplx>(m), std::vector<cplx>(m)};
        for (int q = -1; q >= -W; --q) {
            for (int i = 0; i < m; ++i) basis[i] = inner_basis_eval(q, angles[i]);
            const cplx a = circle_mean(prod, basis);
            if (a == cplx(0.0)) continue;
            const BoundarySamples v = v_samples(-q);
            for (int i = 0; i < m; ++i) {
                y2_conj.outer[i] += std::conj(a) * v.outer[i];
                y2_conj.inner[i] += std::conj(a) * v.inner[i];
            }
        }
        for (int n = rows.lo; n <= rows.hi; ++n) {
            const cplx b = boundary_inner_product(e_samples[static_cast<std::size_t>(n - rows.lo)], y2_conj, geo);
            const auto [alpha, beta] = conjugate_basis_coeffs(n, R);
            const int row = -n - rows.lo;
            perp(row, k) = b * beta;
            range(row, k) = b * alpha;
            t_perp(row, k) = t_diag(n, R) * b * beta;
        }
    }

    // H_phi v_k = sqrt(1 + R^{2k}) H_phi e_{-k}.
    const TruncatedOperator H = build_hankel_annulus(phi, rows, IndexWindow{-(W - 1), 0}, R);
    Eigen::MatrixXcd h_py0(rows.size(), W);
    for (int k = 0; k < W; ++k) h_py0.col(k) = H.column(-k) / hardy_scale(k, R);

    return {max_abs(perp - h_py0), max_abs(range - t_perp)};
}

std::vector<int> DecayProfile::tail_index(double eps) const {
    std::vector<int> out;
    out.reserve(singular_values.size());
    for (const auto& sv : singular_values)
        out.push_back(static_cast<int>(std::count_if(sv.begin(), sv.end(), [&](double s) { return s > eps; })));
    return out;
}

DecayProfile hankel_decay_profile(const CircleFunction& phi, const std::vector<int>& sizes, int keep) {
    DecayProfile p;
    for (int n : sizes) {
        const TruncatedOperator H = build_disc_hankel(phi, n, n);
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(H.entries);
        if (svd.info() != Eigen::Success)
            throw Error("SVD failed on the Hankel section of size " + std::to_string(n));
        const auto& s = svd.singularValues();
        const int count = keep > 0 ? std::min<int>(keep, static_cast<int>(s.size())) : static_cast<int>(s.size());
        p.sizes.push_back(n);
        p.singular_values.emplace_back(s.data(), s.data() + count);
    }
    return p;
}

const char* compactness_name(Compactness c) noexcept {
    switch (c) {
        case Compactness::DecayObserved: return "DecayObserved";
        case Compactness::NoDecay: return "NoDecay";
        case Compactness::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Compactness classify_decay(const DecayProfile& profile, const DecayThresholds& th) {
    const auto tail = profile.tail_index(th.eps);
    if (tail.empty()) throw PreconditionError("classify_decay: empty profile");
    if (std::is_sorted(tail.rbegin(), tail.rend())) return Compactness::DecayObserved;
    if (tail.back() >= th.growth_factor * tail.front() && tail.back() >= th.growth_floor) return Compactness::NoDecay;
    return Compactness::Inconclusive;
}

CompactnessVerdict hankel_compactness_indicator(const BoundarySymbol& phi, const std::vector<int>& sizes, double R,
                                                const DecayThresholds& th) {
    if (sizes.size() < 3) throw PreconditionError("compactness indicator needs at least three section sizes");
    if (!std::is_sorted(sizes.begin(), sizes.end()) ||
        std::adjacent_find(sizes.begin(), sizes.end()) != sizes.end() || sizes.front() < 1)
        throw PreconditionError("section sizes must be positive and strictly increasing");

    const Pullbacks pb = pullback_symbols(phi, R);
    CompactnessVerdict v;
    v.thresholds = th;
    v.outer = hankel_decay_profile(pb.outer, sizes);
    v.inner = hankel_decay_profile(pb.inner, sizes);
    v.outer_verdict = classify_decay(v.outer, th);
    v.inner_verdict = classify_decay(v.inner, th);
    if (v.outer_verdict == Compactness::NoDecay || v.inner_verdict == Compactness::NoDecay)
        v.verdict = Compactness::NoDecay;
    else if (v.outer_verdict == Compactness::DecayObserved && v.inner_verdict == Compactness::DecayObserved)
        v.verdict = Compactness::DecayObserved;
    else
        v.verdict = Compactness::Inconclusive;
    return v;
}

double semicommutator_residual_annulus(const BoundarySymbol& f, const BoundarySymbol& g, IndexWindow window,
                                       double R) {
    const int margin = f.bandwidth() + g.bandwidth();
    if (window.interior(margin).empty())
        throw WindowError("semicommutator window leaves no interior", 2 * margin + 1);
    const auto Tfg = build_toeplitz_hardy(multiply(f, g), window, R);
    const auto TfTg = compose(build_toeplitz_hardy(f, window, R), build_toeplitz_hardy(g, window, R));
    const auto Hf = build_hankel_annulus(f.conj(), window, window, R);
    const auto Hg = build_hankel_annulus(g, window, window, R);
    const Eigen::MatrixXcd defect = Tfg.entries - TfTg.entries - Hf.entries.adjoint() * Hg.entries;
    return max_abs(interior_block(defect, margin));
}

double semicommutator_residual_disc(const CircleFunction& f, const CircleFunction& g, int size) {
    const auto [flo, fhi] = f.support();
    const auto [glo, ghi] = g.support();
    const int margin = std::max({std::abs(flo), std::abs(fhi), 0}) + std::max({std::abs(glo), std::abs(ghi), 0});
    if (size - margin < 1) throw WindowError("disc semicommutator section too small", margin + 1);
    const auto Tfg = build_disc_toeplitz(multiply(f, g), size);
    const auto TfTg = compose(build_disc_toeplitz(f, size), build_disc_toeplitz(g, size));
    const auto Hf = build_disc_hankel(f.conj(), size, size);
    const auto Hg = build_disc_hankel(g, size, size);
    const Eigen::MatrixXcd defect = Tfg.entries - TfTg.entries - Hf.entries.adjoint() * Hg.entries;
    return max_abs(defect.topLeftCorner(size - margin, size - margin));
}

ReducedZeroProductReport zero_product_experiment_reduced(const BoundarySymbol& f, const BoundarySymbol& g,
                                                         IndexWindow window, double R, double tolerance) {
    if (!f.is_exact() || !g.is_exact()) throw PreconditionError("zero_product_experiment_reduced: exact symbols required");
    ReducedZeroProductReport rep;
    const std::vector<int> probe{16, 32, 64};
    rep.g_hankel = hankel_compactness_indicator(g, probe, R).verdict;
    rep.conj_f_hankel = hankel_compactness_indicator(f.conj(), probe, R).verdict;
    if (rep.g_hankel != Compactness::DecayObserved && rep.conj_f_hankel != Compactness::DecayObserved)
        throw PreconditionError("neither g nor conj(f) shows Hankel decay on both pullbacks");

    rep.f_zero = f.is_zero();
    rep.g_zero = g.is_zero();
    rep.margin = f.bandwidth() + g.bandwidth();
    const IndexWindow interior = window.interior(rep.margin);
    if (interior.empty()) throw WindowError("window leaves no interior at the bandwidth margin", 2 * rep.margin + 1);

    const auto Tf = build_toeplitz_hardy(f, window, R);
    const auto product = compose(Tf, build_toeplitz_hardy(g, window, R));
    const auto Tfg = build_toeplitz_hardy(multiply(f, g), window, R);
    const Eigen::MatrixXcd hankel_term = build_hankel_annulus(f.conj(), window, window, R).entries.adjoint() *
                                         build_hankel_annulus(g, window, window, R).entries;

    rep.product_norm = interior_block(product.entries, rep.margin).norm();
    rep.symbol_product_norm = interior_block(Tfg.entries, rep.margin).norm();
    rep.hankel_term_norm = interior_block(hankel_term, rep.margin).norm();
    rep.identity_residual = max_abs(interior_block(Tfg.entries - product.entries - hankel_term, rep.margin));

    rep.product_column_norms = column_norms(product, interior);
    rep.min_product_column_norm =
        *std::min_element(rep.product_column_norms.begin(), rep.product_column_norms.end());
    const auto& norms = rep.product_column_norms;
    const bool product_vanishes = std::all_of(norms.begin(), norms.end(), [&](double v) { return v < tolerance; });
    if (!rep.f_zero && !rep.g_zero && product_vanishes) rep.verdict = ZeroProductVerdict::Violation;
    return rep;
}

}  // namespace annulus
