#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "annulus/geometry.hpp"

namespace annulus {

// Inclusive range of basis indices [lo, hi].
struct IndexWindow {
    int lo = 0;
    int hi = -1;

    int size() const noexcept { return hi - lo + 1; }
    bool empty() const noexcept { return hi < lo; }
    bool contains(int n) const noexcept { return lo <= n && n <= hi; }
    // Shrinks both ends by `margin`.
    IndexWindow interior(int margin) const noexcept { return {lo + margin, hi - margin}; }
    // Zero-based window [0, n-1].
    static IndexWindow first(int n) noexcept { return {0, n - 1}; }
};

/// Finite section of an operator: entry (j, k) is the coefficient of row
/// basis vector `rows.lo + j` in the image of column basis vector `cols.lo + k`.
struct TruncatedOperator {
    BasisTag row_tag;
    BasisTag col_tag;
    IndexWindow rows;
    IndexWindow cols;
    Eigen::MatrixXcd entries;

    TruncatedOperator(BasisTag row_tag, BasisTag col_tag, IndexWindow rows, IndexWindow cols);

    // Addressed by basis index, not by matrix position.
    cplx& at(int row, int col) { return entries(row - rows.lo, col - cols.lo); }
    cplx at(int row, int col) const { return entries(row - rows.lo, col - cols.lo); }
    auto column(int col) const { return entries.col(col - cols.lo); }
};

enum class ZeroProductVerdict { ConsistentWithTheorem, Violation };

const char* verdict_name(ZeroProductVerdict v) noexcept;

// a * b; b's rows must be a's columns, basis and window alike.
TruncatedOperator compose(const TruncatedOperator& a, const TruncatedOperator& b);

// ||b - P b|| / ||b|| with P the orthogonal projection onto the column span
// of `span`. Columns are taken in order; one whose component outside the
// earlier columns is below 1e-13 of its norm adds no direction.
// Zero for b = 0 and one when the span is empty.
double projection_residual(const Eigen::MatrixXcd& span, const Eigen::VectorXcd& b);

// Euclidean norms of the columns of `op` with basis index in `cols`.
std::vector<double> column_norms(const TruncatedOperator& op, IndexWindow cols);

// "j,k,re,im" rows by basis index, 17 significant digits.
void write_section_csv(const TruncatedOperator& op, std::ostream& out);
void write_section_csv(const TruncatedOperator& op, const std::filesystem::path& path);

}  // namespace annulus
