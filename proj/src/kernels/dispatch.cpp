#include "annulus/kernels.hpp"

#include "annulus/errors.hpp"

namespace annulus::kernels {

namespace {

struct Table {
    Backend backend;
    cplx (*dot_conj)(const cplx*, const cplx*, std::size_t) noexcept;
    cplx (*weighted_sum)(const double*, const cplx*, std::size_t) noexcept;
    void (*multiply)(const cplx*, const cplx*, cplx*, std::size_t) noexcept;
};

constexpr Table kScalar{Backend::Scalar, scalar::dot_conj, scalar::weighted_sum, scalar::multiply};
#if defined(ANNULUS_HAVE_AVX2)
constexpr Table kAvx2{Backend::Avx2, avx2::dot_conj, avx2::weighted_sum, avx2::multiply};
#endif

bool cpu_has_avx2() noexcept {
#if defined(ANNULUS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table* detect() noexcept {
#if defined(ANNULUS_HAVE_AVX2)
    if (cpu_has_avx2()) return &kAvx2;
#endif
    return &kScalar;
}

const Table*& current() noexcept {
    static const Table* table = detect();
    return table;
}

void check_sizes(std::size_t a, std::size_t b) {
    if (a != b) throw GeometryMismatch("kernel operands differ in length");
}

}  // namespace

cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b) {
    check_sizes(a.size(), b.size());
    return current()->dot_conj(a.data(), b.data(), a.size());
}

cplx weighted_sum(std::span<const double> w, std::span<const cplx> v) {
    check_sizes(w.size(), v.size());
    return current()->weighted_sum(w.data(), v.data(), v.size());
}

void multiply(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
    check_sizes(a.size(), b.size());
    check_sizes(a.size(), out.size());
    current()->multiply(a.data(), b.data(), out.data(), a.size());
}

Backend active_backend() noexcept { return current()->backend; }

bool backend_supported(Backend b) noexcept {
    return b == Backend::Scalar || (b == Backend::Avx2 && cpu_has_avx2());
}

std::string_view backend_name(Backend b) noexcept {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

void set_backend(Backend b) {
    if (!backend_supported(b)) throw Error("kernel backend not supported on this CPU");
#if defined(ANNULUS_HAVE_AVX2)
    current() = (b == Backend::Avx2) ? &kAvx2 : &kScalar;
#else
    current() = &kScalar;
#endif
}

}  // namespace annulus::kernels
