#include "annulus/operator.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <string>

#include "annulus/errors.hpp"

namespace annulus {

TruncatedOperator::TruncatedOperator(BasisTag row_tag, BasisTag col_tag, IndexWindow rows, IndexWindow cols)
    : row_tag(row_tag), col_tag(col_tag), rows(rows), cols(cols) {
    if (rows.empty() || cols.empty()) throw WindowError("empty index window", 1);
    entries = Eigen::MatrixXcd::Zero(rows.size(), cols.size());
}

const char* verdict_name(ZeroProductVerdict v) noexcept {
    return v == ZeroProductVerdict::Violation ? "Violation" : "ConsistentWithTheorem";
}

TruncatedOperator compose(const TruncatedOperator& a, const TruncatedOperator& b) {
    if (a.col_tag != b.row_tag || a.cols.lo != b.rows.lo || a.cols.hi != b.rows.hi)
        throw GeometryMismatch(std::string("cannot compose: inner spaces differ (") + basis_tag_name(a.col_tag) +
                               " vs " + basis_tag_name(b.row_tag) + ")");
    TruncatedOperator out(a.row_tag, b.col_tag, a.rows, b.cols);
    out.entries.noalias() = a.entries * b.entries;
    return out;
}

double projection_residual(const Eigen::MatrixXcd& span, const Eigen::VectorXcd& b) {
    const double bn = b.norm();
    if (bn == 0.0) return 0.0;
    if (span.cols() == 0) return 1.0;
    // Columns are orthogonalised in the given order, so a nested ladder keeps
    // its well-conditioned increments; a column counts only when its part
    // outside the earlier ones is above 1e-13 of its norm.
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(span);
    const Eigen::Index k = std::min(span.rows(), span.cols());
    const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(span.rows(), k);
    const auto& r = qr.matrixQR();
    Eigen::VectorXcd residual = b;
    for (Eigen::Index i = 0; i < k; ++i) {
        if (std::abs(r(i, i)) <= 1e-13 * span.col(i).norm()) continue;
        residual -= q.col(i) * q.col(i).dot(residual);
    }
    return residual.norm() / bn;
}

std::vector<double> column_norms(const TruncatedOperator& op, IndexWindow cols) {
    std::vector<double> out;
    for (int k = cols.lo; k <= cols.hi; ++k) out.push_back(op.column(k).norm());
    return out;
}

void write_section_csv(const TruncatedOperator& op, std::ostream& out) {
    const auto flags = out.flags();
    const auto prec = out.precision();
    out << "j,k,re,im\n" << std::setprecision(17);
    for (int j = op.rows.lo; j <= op.rows.hi; ++j)
        for (int k = op.cols.lo; k <= op.cols.hi; ++k) {
            const cplx v = op.at(j, k);
            out << j << ',' << k << ',' << v.real() << ',' << v.imag() << '\n';
        }
    out.flags(flags);
    out.precision(prec);
}

void write_section_csv(const TruncatedOperator& op, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_section_csv(op, out);
}

}  // namespace annulus
