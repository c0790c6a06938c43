#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "annulus/operator.hpp"
#include "annulus/symbols.hpp"

namespace annulus {

// <f e_k, e_j> on H^2(dA).
cplx toeplitz_entry(const BoundarySymbol& f, int j, int k, double R);

// Square section of T_f over `window`, rows and columns in the e_n basis.
// Exact symbols of bandwidth B give entries that are exactly zero for |j-k| > B.
TruncatedOperator build_toeplitz_hardy(const BoundarySymbol& f, IndexWindow window, double R);

// Section of H_f : H^2(dA) -> H^2(dA)^perp, rows over f_j and columns over e_k:
// entry (j, k) = <f e_k, f_j>.
TruncatedOperator build_hankel_annulus(const BoundarySymbol& f, IndexWindow rows, IndexWindow cols, double R);

struct RecoveredPairs {
    std::map<int, std::pair<cplx, cplx>> pairs;  // offset n -> (f_C(n), f_C0(n))
    std::vector<int> skipped;                    // offsets only one of the two columns reaches
};

// Recovers the Fourier pairs of f from columns r and s of a Toeplitz section:
// on every diagonal offset both columns give one linear equation in the pair,
// and the two equations are independent whenever r != s.
RecoveredPairs column_zero_recover(const TruncatedOperator& T, int r, int s, double R);

// Smallest n0 with g_C(N) + R^{2n+N} g_C0(N) != 0 for all n >= n0, or nullopt
// when that quantity never vanishes. n0 may be negative. Throws
// PreconditionError when both degree-N coefficients are zero.
std::optional<int> find_n0_hardy(const BoundarySymbol& g, int N, double R);

struct ZeroProductOptions {
    int ladder_steps = 8;      // l = 0..ladder_steps
    double tolerance = 1e-6;   // interior column norms below this count as zero
};

/// Finite-section test of T_f T_g = 0 on H^2(dA).
///
/// The ladder climbs from n_start = max(n0, lo + margin), margin being the
/// bandwidth sum. `ladder_residuals[l]` measures T_f(z^{n_start+N+l}) against
/// span{T_f T_g(z^{n_start+l'}) : l' <= l} u {T_f(z^m) : m < n_start+N}, an
/// inclusion that holds for every pair; `conditional_residuals[l]` drops the
/// product columns and so is small only when the product itself vanishes.
/// A Violation verdict is advisory: a numerically zero section does not prove
/// that the operator product is zero.
struct HardyZeroProductReport {
    std::optional<int> n0;
    bool n0_negative = false;
    int ladder_start = 0;
    std::optional<int> k0;     // lowest nonzero degree of f
    int top_degree_f = 0;      // N'
    int top_degree_g = 0;      // N
    int margin = 0;
    int truncation_degree = 0; // most negative symbol degree a window entry can see
    bool f_zero = false;
    bool g_zero = false;
    std::vector<double> ladder_residuals;
    std::vector<double> conditional_residuals;
    std::vector<double> product_column_norms;  // interior columns, in index order
    double min_product_column_norm = 0.0;
    ZeroProductVerdict verdict = ZeroProductVerdict::ConsistentWithTheorem;
};

// Throws WindowError (with the smallest workable window size) when the
// window cannot hold the margin and the ladder.
HardyZeroProductReport zero_product_experiment_hardy(const BoundarySymbol& f, const BoundarySymbol& g,
                                                     IndexWindow window, double R,
                                                     const ZeroProductOptions& opts = {});

}  // namespace annulus
