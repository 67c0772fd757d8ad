#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace catamp {

using Complex = std::complex<double>;

/// ln(n!) for any n >= 0, table-backed for small n.
double log_factorial(int n);

/// ln C(n, k); -inf when k is outside [0, n].
double log_binomial(int n, int k);

/// sqrt(n!) / n! style ratios are formed in log-space by callers.
inline double sign_of_power(int exponent) { return (exponent % 2 == 0) ? 1.0 : -1.0; }

/// Compensated (Neumaier) accumulator.
class KahanSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexKahanSum {
 public:
  void add(const Complex& value) {
    re_.add(value.real());
    im_.add(value.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_;
  KahanSum im_;
};

/// Uniform grid lo, lo+step, ... up to hi inclusive, snapped to 12 significant digits.
std::vector<double> linear_grid(double lo, double hi, double step);

}  // namespace catamp
