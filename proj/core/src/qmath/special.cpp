#include "cvqkd/qmath/special.hpp"

#include <cmath>
#include <stdexcept>

namespace cvqkd::qmath {

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double regularized_gamma_q(int half_twice, double x) {
  if (half_twice <= 0) throw std::invalid_argument("regularized_gamma_q: s <= 0");
  if (x < 0.0) throw std::invalid_argument("regularized_gamma_q: x < 0");
  if (x == 0.0) return 1.0;

  // Q(s+1, x) = Q(s, x) + x^s e^{-x} / Gamma(s+1)
  double q, s;  // current argument s and value Q(s, x)
  if (half_twice % 2 == 0) {
    s = 1.0;
    q = std::exp(-x);
  } else {
    s = 0.5;
    q = std::erfc(std::sqrt(x));
  }
  const double lx = std::log(x);
  while (2.0 * s < half_twice) {
    q += std::exp(s * lx - x - std::lgamma(s + 1.0));
    s += 1.0;
  }
  return q < 1.0 ? q : 1.0;
}

double gamma_ratio_half(int m, int n) {
  const double s = 0.5 * (m + n);
  return std::exp(std::lgamma(s + 1.0) -
                  0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0)));
}

}  // namespace cvqkd::qmath
