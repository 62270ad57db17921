#include "curl/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#if defined(__x86_64__) || defined(__i386__)
#define CURL_LAB_X86 1
#include <immintrin.h>
#else
#define CURL_LAB_X86 0
#endif

#if defined(__aarch64__)
#define CURL_LAB_NEON 1
#include <arm_neon.h>
#else
#define CURL_LAB_NEON 0
#endif

namespace curl::kernels {

// ---------------------------------------------------------------------------
// Scalar reference kernels
// ---------------------------------------------------------------------------

namespace scalar {

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scaled_copy(double alpha, std::span<const double> src, std::span<double> dst) {
    assert(src.size() == dst.size());
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = alpha * src[i];
}

double sum(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v;
    return acc;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
    return acc;
}

} // namespace scalar

// ---------------------------------------------------------------------------
// AVX2 kernels (4 doubles per lane, FMA). Compiled with target attributes so
// the rest of the build stays generic; only reached after the cpuid check.
// ---------------------------------------------------------------------------

#if CURL_LAB_X86

namespace avx2 {

__attribute__((target("avx2,fma")))
double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    acc0 = _mm256_add_pd(acc0, acc1);
    __m128d lo = _mm256_castpd256_pd128(acc0);
    __m128d hi = _mm256_extractf128_pd(acc0, 1);
    lo = _mm_add_pd(lo, hi);
    double acc = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) acc += pa[i] * pb[i];
    return acc;
}

__attribute__((target("avx2,fma")))
void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    const double* px = x.data();
    double* py = y.data();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(py + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(px + i), vy);
        _mm256_storeu_pd(py + i, vy);
    }
    for (; i < n; ++i) py[i] += alpha * px[i];
}

__attribute__((target("avx2,fma")))
void scaled_copy(double alpha, std::span<const double> src, std::span<double> dst) {
    const std::size_t n = src.size();
    const double* ps = src.data();
    double* pd = dst.data();
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(pd + i, _mm256_mul_pd(va, _mm256_loadu_pd(ps + i)));
    for (; i < n; ++i) pd[i] = alpha * ps[i];
}

__attribute__((target("avx2,fma")))
double sum(std::span<const double> a) {
    const std::size_t n = a.size();
    const double* pa = a.data();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(pa + i));
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) s += pa[i];
    return s;
}

__attribute__((target("avx2,fma")))
double l1_distance(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double s = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) s += std::fabs(pa[i] - pb[i]);
    return s;
}

} // namespace avx2

#endif // CURL_LAB_X86

// ---------------------------------------------------------------------------
// NEON kernels (2 doubles per lane)
// ---------------------------------------------------------------------------

#if CURL_LAB_NEON

namespace neon {

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vfmaq_f64(acc, vld1q_f64(pa + i), vld1q_f64(pb + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += pa[i] * pb[i];
    return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    const std::size_t n = x.size();
    const double* px = x.data();
    double* py = y.data();
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(py + i, vfmaq_f64(vld1q_f64(py + i), va, vld1q_f64(px + i)));
    for (; i < n; ++i) py[i] += alpha * px[i];
}

void scaled_copy(double alpha, std::span<const double> src, std::span<double> dst) {
    const std::size_t n = src.size();
    const double* ps = src.data();
    double* pd = dst.data();
    const float64x2_t va = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(pd + i, vmulq_f64(va, vld1q_f64(ps + i)));
    for (; i < n; ++i) pd[i] = alpha * ps[i];
}

double sum(std::span<const double> a) {
    const std::size_t n = a.size();
    const double* pa = a.data();
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(pa + i));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += pa[i];
    return s;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vaddq_f64(acc, vabdq_f64(vld1q_f64(pa + i), vld1q_f64(pb + i)));
    double s = vaddvq_f64(acc);
    for (; i < n; ++i) s += std::fabs(pa[i] - pb[i]);
    return s;
}

} // namespace neon

#endif // CURL_LAB_NEON

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

namespace {

struct KernelTable {
    double (*dot)(std::span<const double>, std::span<const double>);
    void (*axpy)(double, std::span<const double>, std::span<double>);
    void (*scaled_copy)(double, std::span<const double>, std::span<double>);
    double (*sum)(std::span<const double>);
    double (*l1_distance)(std::span<const double>, std::span<const double>);
};

constexpr KernelTable kScalarTable{scalar::dot, scalar::axpy, scalar::scaled_copy,
                                   scalar::sum, scalar::l1_distance};

#if CURL_LAB_X86
constexpr KernelTable kAvx2Table{avx2::dot, avx2::axpy, avx2::scaled_copy,
                                 avx2::sum, avx2::l1_distance};
#endif
#if CURL_LAB_NEON
constexpr KernelTable kNeonTable{neon::dot, neon::axpy, neon::scaled_copy,
                                 neon::sum, neon::l1_distance};
#endif

Backend pick_default() {
    if (const char* env = std::getenv("CURL_LAB_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2" && backend_supported(Backend::avx2)) return Backend::avx2;
        if (v == "neon" && backend_supported(Backend::neon)) return Backend::neon;
        // "auto" or an unusable request falls through to detection
    }
#if CURL_LAB_X86
    if (backend_supported(Backend::avx2)) return Backend::avx2;
#endif
#if CURL_LAB_NEON
    return Backend::neon;
#endif
    return Backend::scalar;
}

struct Dispatch {
    Backend backend;
    KernelTable table;
    Dispatch() : backend(pick_default()), table(table_for(backend)) {}
    static KernelTable table_for(Backend b) {
        switch (b) {
#if CURL_LAB_X86
            case Backend::avx2: return kAvx2Table;
#endif
#if CURL_LAB_NEON
            case Backend::neon: return kNeonTable;
#endif
            default: return kScalarTable;
        }
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

} // namespace

Backend active_backend() { return dispatch().backend; }

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
        default: return "scalar";
    }
}

bool backend_supported(Backend backend) {
    switch (backend) {
        case Backend::scalar: return true;
        case Backend::avx2:
#if CURL_LAB_X86
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::neon:
#if CURL_LAB_NEON
            return true;
#else
            return false;
#endif
    }
    return false;
}

void select_backend(Backend backend) {
    if (!backend_supported(backend))
        throw std::runtime_error("kernel backend not supported on this host: " +
                                 std::string(backend_name(backend)));
    dispatch().backend = backend;
    dispatch().table = Dispatch::table_for(backend);
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return dispatch().table.dot(a, b);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    dispatch().table.axpy(alpha, x, y);
}

void scaled_copy(double alpha, std::span<const double> src, std::span<double> dst) {
    assert(src.size() == dst.size());
    dispatch().table.scaled_copy(alpha, src, dst);
}

double sum(std::span<const double> a) { return dispatch().table.sum(a); }

double l1_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return dispatch().table.l1_distance(a, b);
}

} // namespace curl::kernels
