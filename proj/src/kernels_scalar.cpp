#include "cohcat/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace cohcat::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

double sqrt_product_sum(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::sqrt(a[i] * b[i]);
  return sum;
}

double harmonic_desc(std::uint64_t m) {
  double sum = 0.0;
  for (std::uint64_t j = m; j >= 1; --j) sum += 1.0 / static_cast<double>(j);
  return sum;
}

double embezzle_overlap(std::uint64_t m, std::uint64_t n) {
  const double nd = static_cast<double>(n);
  double sum = 0.0;
  for (std::uint64_t j = m; j >= 1; --j) {
    const auto block = static_cast<double>((j + n - 1) / n);
    sum += 1.0 / std::sqrt(static_cast<double>(j) * nd * block);
  }
  return sum;
}

}  // namespace cohcat::kernels::scalar
