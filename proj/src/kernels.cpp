#include "cohcat/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "cohcat/error.hpp"

namespace cohcat::kernels {

namespace {

struct Table {
  Backend backend;
  double (*dot)(std::span<const double>, std::span<const double>);
  double (*abs_diff_sum)(std::span<const double>, std::span<const double>);
  double (*sqrt_product_sum)(std::span<const double>, std::span<const double>);
  double (*harmonic_desc)(std::uint64_t);
  double (*embezzle_overlap)(std::uint64_t, std::uint64_t);
};

constexpr Table kScalar{Backend::scalar,         scalar::dot,           scalar::abs_diff_sum,
                        scalar::sqrt_product_sum, scalar::harmonic_desc, scalar::embezzle_overlap};
constexpr Table kAvx2{Backend::avx2,         avx2::dot,           avx2::abs_diff_sum,
                      avx2::sqrt_product_sum, avx2::harmonic_desc, avx2::embezzle_overlap};

bool cpu_has_avx2() {
#if defined(COHCAT_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* initial_table() {
  if (const char* env = std::getenv("COHCAT_SIMD")) {
    const std::string choice(env);
    if (choice == "scalar") return &kScalar;
    if (choice == "avx2" && cpu_has_avx2()) return &kAvx2;
  }
  return cpu_has_avx2() ? &kAvx2 : &kScalar;
}

std::atomic<const Table*>& table() {
  static std::atomic<const Table*> active{initial_table()};
  return active;
}

const Table& current() { return *table().load(std::memory_order_acquire); }

void require_same_size(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("kernel operands differ in length");
}

}  // namespace

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend b) { return b == Backend::scalar || cpu_has_avx2(); }

Backend active_backend() { return current().backend; }

void set_backend(Backend b) {
  if (!backend_available(b)) throw InvalidParameter("SIMD backend not available: " + std::string(backend_name(b)));
  table().store(b == Backend::avx2 ? &kAvx2 : &kScalar, std::memory_order_release);
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  return current().dot(a, b);
}

double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  return current().abs_diff_sum(a, b);
}

double sqrt_product_sum(std::span<const double> a, std::span<const double> b) {
  require_same_size(a, b);
  return current().sqrt_product_sum(a, b);
}

double harmonic_desc(std::uint64_t m) { return current().harmonic_desc(m); }

double embezzle_overlap(std::uint64_t m, std::uint64_t n) {
  if (n == 0) throw InvalidDimension("embezzle_overlap: target dimension must be positive");
  return current().embezzle_overlap(m, n);
}

}  // namespace cohcat::kernels
