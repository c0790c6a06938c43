#include "annulus/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "annulus/errors.hpp"

namespace annulus {

namespace {

void check_alias(int n, std::size_t m) {
    if (2 * static_cast<long long>(std::abs(n)) >= static_cast<long long>(m))
        throw AliasingError("Fourier index " + std::to_string(n) + " aliases on a grid of " + std::to_string(m) +
                            " samples");
}

}  // namespace

CircleFunction CircleFunction::exact(CoefficientMap terms) {
    CircleFunction f;
    f.repr_ = std::move(terms);
    return f;
}

CircleFunction CircleFunction::sampled(std::vector<cplx> values) {
    const auto m = values.size();
    if (m < 8 || (m & (m - 1)) != 0)
        throw GeometryMismatch("sampled circle function needs a power-of-two grid >= 8, got " + std::to_string(m));
    CircleFunction f;
    f.repr_ = std::move(values);
    return f;
}

const CoefficientMap& CircleFunction::terms() const {
    if (!is_exact()) throw PreconditionError("circle function is sampled, not exact");
    return std::get<CoefficientMap>(repr_);
}

const std::vector<cplx>& CircleFunction::values() const {
    if (is_exact()) throw PreconditionError("circle function is exact, not sampled");
    return std::get<std::vector<cplx>>(repr_);
}

cplx CircleFunction::coefficient(int n) const {
    if (is_exact()) {
        const auto& t = terms();
        const auto it = t.find(n);
        return it == t.end() ? cplx(0.0) : it->second;
    }
    const auto& v = values();
    check_alias(n, v.size());
    return direct_coefficient(v, n);
}

std::vector<cplx> CircleFunction::coefficients(int lo, int hi) const {
    std::vector<cplx> out;
    if (hi < lo) return out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    if (is_exact()) {
        for (int n = lo; n <= hi; ++n) out.push_back(coefficient(n));
        return out;
    }
    const auto& v = values();
    check_alias(lo, v.size());
    check_alias(hi, v.size());
    const auto all = fft_coefficients(v);
    const int m = static_cast<int>(v.size());
    for (int n = lo; n <= hi; ++n) out.push_back(all[static_cast<std::size_t>((n % m + m) % m)]);
    return out;
}

std::vector<cplx> CircleFunction::samples(int m) const {
    if (is_exact()) return synthesize(terms(), m);
    const auto& v = values();
    if (static_cast<int>(v.size()) != m)
        throw GeometryMismatch("circle function has " + std::to_string(v.size()) + " samples, grid expects " +
                               std::to_string(m));
    return v;
}

double CircleFunction::scale() const noexcept {
    double s = 0.0;
    if (is_exact()) {
        for (const auto& [n, c] : std::get<CoefficientMap>(repr_)) s = std::max(s, std::abs(c));
    } else {
        for (const auto& c : std::get<std::vector<cplx>>(repr_)) s = std::max(s, std::abs(c));
    }
    return s;
}

std::pair<int, int> CircleFunction::support() const {
    const double cut = kZeroTolerance * scale();
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& [n, c] : terms()) {
        if (std::abs(c) <= cut || c == cplx(0.0)) continue;
        if (!any) lo = hi = n;
        lo = std::min(lo, n);
        hi = std::max(hi, n);
        any = true;
    }
    return {lo, hi};
}

CircleFunction CircleFunction::conj() const {
    if (is_exact()) {
        CoefficientMap out;
        for (const auto& [n, c] : terms()) out[-n] = std::conj(c);
        return exact(std::move(out));
    }
    auto v = values();
    for (auto& c : v) c = std::conj(c);
    return sampled(std::move(v));
}

CircleFunction multiply(const CircleFunction& a, const CircleFunction& b) {
    if (!a.is_exact() || !b.is_exact()) throw PreconditionError("multiply: exact circle functions required");
    CoefficientMap out;
    for (const auto& [n, x] : a.terms())
        for (const auto& [k, y] : b.terms()) out[n + k] += x * y;
    return CircleFunction::exact(std::move(out));
}

BoundarySymbol::BoundarySymbol(CircleFunction outer, CircleFunction inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
    if (outer_.is_exact() != inner_.is_exact())
        throw PreconditionError("boundary symbol: both circles must use the same representation");
    if (!outer_.is_exact() && outer_.values().size() != inner_.values().size())
        throw GeometryMismatch("boundary symbol: circle grids differ in size");
}

BoundarySymbol BoundarySymbol::exact(CoefficientMap outer, CoefficientMap inner) {
    return {CircleFunction::exact(std::move(outer)), CircleFunction::exact(std::move(inner))};
}

BoundarySymbol BoundarySymbol::sampled(std::vector<cplx> outer, std::vector<cplx> inner) {
    return {CircleFunction::sampled(std::move(outer)), CircleFunction::sampled(std::move(inner))};
}

BoundarySymbol BoundarySymbol::analytic(const CoefficientMap& laurent, double R) {
    CoefficientMap inner;
    for (const auto& [n, c] : laurent) inner[n] = c * std::pow(R, n);
    return exact(laurent, std::move(inner));
}

double BoundarySymbol::scale() const noexcept { return std::max(outer_.scale(), inner_.scale()); }

std::pair<int, int> BoundarySymbol::support() const {
    const double cut = kZeroTolerance * scale();
    int lo = 0, hi = -1;
    bool any = false;
    auto visit = [&](const CoefficientMap& t) {
        for (const auto& [n, c] : t) {
            if (c == cplx(0.0) || std::abs(c) <= cut) continue;
            if (!any) lo = hi = n;
            lo = std::min(lo, n);
            hi = std::max(hi, n);
            any = true;
        }
    };
    visit(outer_.terms());
    visit(inner_.terms());
    return {lo, hi};
}

int BoundarySymbol::bandwidth() const {
    const auto [lo, hi] = support();
    if (hi < lo) return 0;
    return std::max(std::abs(lo), std::abs(hi));
}

bool BoundarySymbol::is_zero() const {
    if (is_exact()) {
        const auto [lo, hi] = support();
        return hi < lo;
    }
    return scale() == 0.0;
}

BoundarySymbol BoundarySymbol::conj() const { return {outer_.conj(), inner_.conj()}; }

std::pair<cplx, cplx> fourier_pair(const BoundarySymbol& f, int n) {
    return {f.outer().coefficient(n), f.inner().coefficient(n)};
}

FourierTable fourier_table(const BoundarySymbol& f, int lo, int hi) {
    return {lo, f.outer().coefficients(lo, hi), f.inner().coefficients(lo, hi)};
}

BoundarySymbol multiply(const BoundarySymbol& f, const BoundarySymbol& g) {
    return {multiply(f.outer(), g.outer()), multiply(f.inner(), g.inner())};
}

BoundarySamples sample_symbol(const BoundarySymbol& f, const AnnulusGeometry& geo) {
    const int m = geo.circle_samples();
    return {f.outer().samples(m), f.inner().samples(m)};
}

Pullbacks pullback_symbols(const BoundarySymbol& f, [[maybe_unused]] double R) {
    // The C0 parametrisation already carries the radius.
    if (f.is_exact()) {
        CoefficientMap reversed;
        for (const auto& [n, c] : f.inner().terms()) reversed[-n] = c;
        return {f.outer(), CircleFunction::exact(std::move(reversed))};
    }
    // phi_C0(theta_j) = f(R e^{-i theta_j}) = inner sample at index (m - j) mod m
    const auto& v = f.inner().values();
    const std::size_t m = v.size();
    std::vector<cplx> reversed(m);
    for (std::size_t j = 0; j < m; ++j) reversed[j] = v[(m - j) % m];
    return {f.outer(), CircleFunction::sampled(std::move(reversed))};
}

}  // namespace annulus
