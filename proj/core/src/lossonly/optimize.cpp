#include "cvqkd/lossonly/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cvqkd/errors.hpp"

namespace cvqkd::lossonly {

namespace {

constexpr int kPrescanPoints = 20;

// Golden-section maximization on [a, b]; returns the midpoint of the final
// bracket and its value.
AlphaSearchResult golden_section(const std::function<double(double)>& fn,
                                 double a, double b, double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = fn(d);
    }
  }
  AlphaSearchResult r;
  r.alpha = 0.5 * (a + b);
  r.value = fn(r.alpha);
  return r;
}

}  // namespace

AlphaSearchResult optimize_alpha(const std::function<double(double)>& fn,
                                 double lo, double hi, double tol) {
  if (!(lo < hi)) throw ConfigError("optimize_alpha: need lo < hi");
  if (!(tol > 0.0)) throw ConfigError("optimize_alpha: tol <= 0");
  const double step = (hi - lo) / (kPrescanPoints - 1);
  std::vector<double> x(kPrescanPoints), f(kPrescanPoints);
  for (int i = 0; i < kPrescanPoints; ++i) {
    x[i] = lo + i * step;
    f[i] = fn(x[i]);
  }
  // Scan local maxima (endpoints count when they dominate their neighbor).
  std::vector<int> peaks;
  for (int i = 0; i < kPrescanPoints; ++i) {
    const bool left_ok = (i == 0) || f[i] >= f[i - 1];
    const bool right_ok = (i == kPrescanPoints - 1) || f[i] >= f[i + 1];
    if (left_ok && right_ok) peaks.push_back(i);
  }
  AlphaSearchResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int i : peaks) {
    const double a = std::max(lo, x[i] - step);
    const double b = std::min(hi, x[i] + step);
    const AlphaSearchResult cand = golden_section(fn, a, b, tol);
    if (cand.value > best.value) best = cand;
  }
  // Let the exact endpoints compete; a monotone objective ends up there.
  for (double edge : {lo, hi}) {
    const double fe = fn(edge);
    if (fe > best.value) {
      best.alpha = edge;
      best.value = fe;
    }
  }
  best.at_boundary =
      best.alpha - lo < 2.0 * tol || hi - best.alpha < 2.0 * tol;
  return best;
}

}  // namespace cvqkd::lossonly
