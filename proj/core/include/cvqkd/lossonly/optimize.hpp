#pragma once

#include <functional>

namespace cvqkd::lossonly {

struct AlphaSearchResult {
  double alpha = 0.0;
  double value = 0.0;
  bool at_boundary = false;
};

// Maximizes fn over [lo, hi]. A 20-point pre-scan locates the competitive
// local maxima (guarding against multi-modality); each is refined by
// golden-section search to |interval| < tol and the best refined candidate
// wins. Boundary optima are reported with at_boundary set.
AlphaSearchResult optimize_alpha(const std::function<double(double)>& fn,
                                 double lo, double hi, double tol = 1e-4);

}  // namespace cvqkd::lossonly
