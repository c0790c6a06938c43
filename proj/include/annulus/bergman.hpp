#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "annulus/hardy.hpp"
#include "annulus/operator.hpp"
#include "annulus/radial.hpp"

namespace annulus {

// T_f(z^n) = coeff * z^{out_index} for f = e^{ip theta} f1(r).
struct QuasiHomogeneousImage {
    cplx coeff;
    int out_index;
};
QuasiHomogeneousImage quasi_homogeneous_apply(int p, const RadialProfile& f1, int n, double R);

/// Section of T_f on B^2(A) in the orthonormal basis t_n z^n: entry (m, n)
/// is <T_f(t_n z^n), t_m z^m> = t_n t_m f_{m-n}^(m+n+2).
struct BergmanOperatorSection {
    TruncatedOperator op;
    std::set<int> band_offsets;  // nonzero bands that land inside the window
};

// Throws WindowError when no nonzero band can map a window index into the window.
BergmanOperatorSection build_bergman_toeplitz(const PolarSymbol& f, IndexWindow window, double R);

enum class N0Status {
    Located,        // largest real zero found, n0 just above it
    Unconstrained,  // no real zero of the transform in the scanned range
    Unverifiable,   // sampled profile: no finite scan can certify the tail
};

const char* n0_status_name(N0Status s) noexcept;

struct BergmanN0 {
    std::optional<int> n0;
    N0Status status;
    double scan_lo;  // transform arguments covered, 2n + N + 2
    double scan_hi;
};

// n0 for the top band g_N: real zeros z of its Mellin transform are mapped
// to n = (z - N - 2)/2 and n0 = floor(largest) + 1. The scan covers
// n in `n_range`. Throws PreconditionError for a zero profile.
BergmanN0 find_n0_bergman(const RadialProfile& gN, int N, double R, IndexWindow n_range);

struct MellinTarget {
    int band;     // k
    double z;     // argument k + 2(n0 + N + l_k + 1) + 2l
    cplx value;   // f_k^(z)
};

/// Finite-section test of T_f T_g = 0 on B^2(A). The conclusion this tests
/// is one-sided: a vanishing product forces f = 0, nothing is said about g.
///
/// `ladder_residuals[l]` measures z^{start+N+l} against
/// span{T_g(z^{start+l'}) : l' <= l} u {z^m : lo <= m < start+N}; that
/// inclusion holds whenever the top coefficient of T_g stays nonzero from
/// `start` on. `targets` lists the transform values of every band of f
/// that a vanishing product would force to zero.
struct BergmanZeroProductReport {
    BergmanN0 n0;
    int ladder_start = 0;
    int top_degree_f = 0;  // M
    int top_degree_g = 0;  // N
    int margin = 0;
    bool f_zero = false;
    bool g_zero = false;
    std::vector<double> ladder_residuals;
    std::vector<double> product_column_norms;
    double min_product_column_norm = 0.0;
    std::vector<MellinTarget> targets;
    ZeroProductVerdict verdict = ZeroProductVerdict::ConsistentWithTheorem;
};

BergmanZeroProductReport zero_product_experiment_bergman(const PolarSymbol& f, const PolarSymbol& g,
                                                         IndexWindow window, double R,
                                                         const ZeroProductOptions& opts = {});

}  // namespace annulus
