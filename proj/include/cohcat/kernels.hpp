#pragma once

// Reduction kernels behind the vector-valued metrics and the embezzling
// protocol. Each kernel has a portable scalar reference and, on x86-64, an
// AVX2 variant. The active backend is picked once at startup from CPUID and
// can be overridden with COHCAT_SIMD=scalar|avx2 or set_backend().

#include <cstdint>
#include <span>
#include <string_view>

namespace cohcat::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

/// True when the CPU and the build both support the backend.
bool backend_available(Backend b);

Backend active_backend();

/// Switches the dispatch table. Throws InvalidParameter if unavailable.
void set_backend(Backend b);

/// Sum of a[i] * b[i].
double dot(std::span<const double> a, std::span<const double> b);

/// Sum of |a[i] - b[i]|.
double abs_diff_sum(std::span<const double> a, std::span<const double> b);

/// Sum of sqrt(a[i] * b[i]); the classical fidelity of two distributions.
double sqrt_product_sum(std::span<const double> a, std::span<const double> b);

/// Harmonic number H(m) = sum_{j=1..m} 1/j, accumulated from j = m down.
double harmonic_desc(std::uint64_t m);

/// sum_{j=1..m} 1 / sqrt(j * n * ceil(j / n)), accumulated from j = m down.
/// Divided by H(m) this is the overlap between the embezzling catalyst
/// with |1> attached and its sorted rearrangement with |Psi_n>.
double embezzle_overlap(std::uint64_t m, std::uint64_t n);

// Direct entry points for equivalence testing. The avx2 variants must
// only be called when backend_available(Backend::avx2).
namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double abs_diff_sum(std::span<const double> a, std::span<const double> b);
double sqrt_product_sum(std::span<const double> a, std::span<const double> b);
double harmonic_desc(std::uint64_t m);
double embezzle_overlap(std::uint64_t m, std::uint64_t n);
}  // namespace scalar

namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
double abs_diff_sum(std::span<const double> a, std::span<const double> b);
double sqrt_product_sum(std::span<const double> a, std::span<const double> b);
double harmonic_desc(std::uint64_t m);
double embezzle_overlap(std::uint64_t m, std::uint64_t n);
}  // namespace avx2

}  // namespace cohcat::kernels
