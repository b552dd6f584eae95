#pragma once

namespace cvqkd::qmath {

// Binary entropy in bits; h(0) = h(1) = 0.
double binary_entropy(double p);

// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x)/Gamma(s) for
// s = half_twice/2 with half_twice a positive integer (so s is an integer or
// half-integer). Exact seeds Q(1,x) = e^{-x}, Q(1/2,x) = erfc(sqrt(x)) plus an
// upward recurrence; all recurrence terms are positive, so no cancellation.
double regularized_gamma_q(int half_twice, double x);

// exp(lgamma(s+1) - (lgamma(m+1) + lgamma(n+1))/2): the Gamma(s+1)/sqrt(m!n!)
// ratio used by region-operator matrix elements, with s = (m+n)/2.
double gamma_ratio_half(int m, int n);

}  // namespace cvqkd::qmath
