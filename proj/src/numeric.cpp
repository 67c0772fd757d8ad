#include "catamp/numeric.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <string>
#include <limits>

namespace catamp {
namespace {

constexpr int kTableSize = 512;

const std::array<double, kTableSize>& factorial_table() {
  static const std::array<double, kTableSize> table = [] {
    std::array<double, kTableSize> t{};
    t[0] = 0.0;
    for (int n = 1; n < kTableSize; ++n) t[n] = t[n - 1] + std::log(static_cast<double>(n));
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) return std::numeric_limits<double>::quiet_NaN();
  if (n < kTableSize) return factorial_table()[n];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  std::vector<double> grid;
  if (step <= 0.0 || hi < lo) return grid;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  grid.reserve(count + 1);
  // Snap to 12 significant digits so 0.1 + 2 * 0.1 prints as 0.3.
  for (long i = 0; i <= count; ++i) grid.push_back(std::stod(fmt::format("{:.12g}", lo + step * static_cast<double>(i))));
  return grid;
}

}  // namespace catamp
