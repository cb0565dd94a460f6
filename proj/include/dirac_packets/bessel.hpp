#pragma once

#include <cmath>

namespace dirac_packets::bessel {

// Below this argument the closed forms lose digits to cancellation
// (j1 = sin x / x^2 - cos x / x), so the power series is summed instead.
inline constexpr double series_threshold = 0.5;

namespace detail {

// sum_k (-x^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1)), the bracket in
//   j_l(x) = x^l / (2l+1)!! * sum.
inline double series_sum(int l, double x) {
  const double y = -0.5 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace detail

inline double j0(double x) {
  if (std::abs(x) < series_threshold) return detail::series_sum(0, x);
  return std::sin(x) / x;
}

inline double j1(double x) {
  if (std::abs(x) < series_threshold) return x / 3.0 * detail::series_sum(1, x);
  return (std::sin(x) / x - std::cos(x)) / x;
}

// d/dx j1(x) = j0(x) - 2 j1(x) / x
inline double j1_prime(double x) {
  if (std::abs(x) < series_threshold) {
    // term-wise derivative of x/3 * sum_k c_k x^{2k}
    const double y = -0.5 * x * x;
    double coeff = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 30; ++k) {
      coeff *= y / (k * (2.0 * k + 3.0));
      const double t = coeff * (2.0 * k + 1.0);
      sum += t;
      if (std::abs(t) < 1e-17 * std::abs(sum)) break;
    }
    return sum / 3.0;
  }
  const double s = std::sin(x), c = std::cos(x);
  return s / x - 2.0 * (s / x - c) / (x * x);
}

// j0, j1 and j1' sharing one sin/cos evaluation.
struct Values {
  double j0, j1, j1_prime;
};

inline Values evaluate(double x) {
  if (std::abs(x) < series_threshold) return {j0(x), j1(x), j1_prime(x)};
  const double s = std::sin(x), c = std::cos(x);
  const double inv = 1.0 / x;
  const double v0 = s * inv;
  const double v1 = (v0 - c) * inv;
  return {v0, v1, v0 - 2.0 * v1 * inv};
}

}  // namespace dirac_packets::bessel
