#pragma once

#include <string>
#include <utility>
#include <vector>

#include "annulus/hardy.hpp"
#include "annulus/operator.hpp"
#include "annulus/symbols.hpp"

namespace annulus {

// Disc Toeplitz section over z^0..z^{size-1}: entry (j, k) = phi(j - k).
TruncatedOperator build_disc_toeplitz(const CircleFunction& phi, int size);

// Disc Hankel section: row j stands for z^{-(j+1)}, column k for z^k, and
// entry (j, k) = phi(-(j+1) - k).
TruncatedOperator build_disc_hankel(const CircleFunction& phi, int rows, int cols);

// conj(e_n) = alpha e_{-n} + beta f_{-n}.
struct ConjugateCoeffs {
    double alpha;
    double beta;
};
ConjugateCoeffs conjugate_basis_coeffs(int n, double R) noexcept;

// Diagonal of the compact map f_{-n} -> t(n) e_{-n}; t(0) = 0.
double t_diag(int n, double R) noexcept;

struct DiagramCheck {
    double residual;         // max |U0 H^{Y0} pi0^{-1} - H_{phi_C0}| over the window
    double u0_unitarity;     // max |U0^* U0 - I|
    double pi0_unitarity;    // max |pi0^{-*} pi0^{-1} - I|
};

// Compares the inner-circle Hankel H^{Y0}_phi, assembled by quadrature on
// the geometry's C0 grid and transported through the two relabelling
// unitaries, with the disc Hankel of the inner pullback. `window` is the
// number of basis vectors on either side.
DiagramCheck diagram_residual(const BoundarySymbol& phi, int window, const AnnulusGeometry& geo);

struct SplitResiduals {
    double perp_part;   // P_perp H^{Y0} - H_phi P_{Y0}
    double range_part;  // P_H2 H^{Y0} - T P_perp H^{Y0}
};

// Both sides in the {e_n} u {f_n} coordinates, with Y0 spanned by the
// functions (R/z)^k, k >= 0, and the part of H^{Y0} v_k in each family read
// off from the conjugate-basis expansion of its conjugate.
SplitResiduals split_relation_residual(const BoundarySymbol& phi, int window, const AnnulusGeometry& geo);

/// Singular values of growing disc Hankel sections.
struct DecayProfile {
    std::vector<int> sizes;
    std::vector<std::vector<double>> singular_values;  // per size, nonincreasing

    // Count of singular values above eps, per size.
    std::vector<int> tail_index(double eps) const;
    bool empty() const noexcept { return sizes.empty(); }
};

// `keep` = 0 keeps every singular value.
DecayProfile hankel_decay_profile(const CircleFunction& phi, const std::vector<int>& sizes, int keep = 0);

enum class Compactness { DecayObserved, NoDecay, Inconclusive };

const char* compactness_name(Compactness c) noexcept;

struct DecayThresholds {
    double eps = 0.5;
    int growth_factor = 2;  // tail at the largest size >= factor x tail at the smallest
    int growth_floor = 4;   // and at least this many values above eps
};

// DecayObserved when the tail index never increases with size, NoDecay when
// it grows by the threshold factor, Inconclusive otherwise.
Compactness classify_decay(const DecayProfile& profile, const DecayThresholds& th = {});

struct CompactnessVerdict {
    Compactness verdict;
    Compactness outer_verdict;
    Compactness inner_verdict;
    DecayProfile outer;  // Hankel sections of phi_C
    DecayProfile inner;  // Hankel sections of phi_C0
    DecayThresholds thresholds;
};

// Sizes must be strictly increasing with at least three entries.
CompactnessVerdict hankel_compactness_indicator(const BoundarySymbol& phi, const std::vector<int>& sizes,
                                                double R, const DecayThresholds& th = {});

// Max interior deviation of T_{fg} - T_f T_g from H_{conj f}^* H_g on the
// annulus window; the interior drops the bandwidth sum at each end.
double semicommutator_residual_annulus(const BoundarySymbol& f, const BoundarySymbol& g, IndexWindow window,
                                       double R);

// Same identity for disc sections of the given size, checked on j, k < size - margin.
double semicommutator_residual_disc(const CircleFunction& f, const CircleFunction& g, int size);

struct ReducedZeroProductReport {
    bool f_zero = false;
    bool g_zero = false;
    Compactness g_hankel;          // indicator on the right factor
    Compactness conj_f_hankel;     // indicator on conj(f)
    int margin = 0;
    double product_norm = 0.0;     // interior Frobenius norms
    double symbol_product_norm = 0.0;
    double hankel_term_norm = 0.0;
    double identity_residual = 0.0;
    std::vector<double> product_column_norms;
    double min_product_column_norm = 0.0;
    ZeroProductVerdict verdict = ZeroProductVerdict::ConsistentWithTheorem;
};

// Throws PreconditionError unless g or conj(f) has DecayObserved Hankels on
// both pullbacks at the sizes {16, 32, 64}.
ReducedZeroProductReport zero_product_experiment_reduced(const BoundarySymbol& f, const BoundarySymbol& g,
                                                         IndexWindow window, double R, double tolerance = 1e-6);

}  // namespace annulus
