#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Vectorized primitives behind the probability-array loops. Every operation
// has a scalar reference implementation and, where the host supports it, an
// AVX2 (x86-64) or NEON (aarch64) variant. The active backend is picked once
// at startup; set CURL_LAB_SIMD=scalar|avx2|neon|auto to override.
namespace curl::kernels {

enum class Backend { scalar, avx2, neon };

/// Backend currently routed to by the dispatched entry points.
Backend active_backend();
std::string_view backend_name(Backend backend);

/// Force a backend (throws if unsupported on this host). Intended for tests
/// and the CLI's env-var override; not thread-safe against concurrent kernel
/// calls.
void select_backend(Backend backend);
bool backend_supported(Backend backend);

// Dispatched entry points.

/// Sum of elementwise products.
double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// dst = alpha * src
void scaled_copy(double alpha, std::span<const double> src, std::span<double> dst);

/// Sum of all elements.
double sum(std::span<const double> a);

/// Sum of |a_i - b_i|.
double l1_distance(std::span<const double> a, std::span<const double> b);

// Reference implementations, always available. The dispatched variants must
// agree with these within floating-point reassociation error; the equivalence
// tests pin that down.
namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scaled_copy(double alpha, std::span<const double> src, std::span<double> dst);
double sum(std::span<const double> a);
double l1_distance(std::span<const double> a, std::span<const double> b);
} // namespace scalar

} // namespace curl::kernels
