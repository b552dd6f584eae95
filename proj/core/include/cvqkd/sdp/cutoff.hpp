#pragma once

#include <cmath>

namespace cvqkd::sdp {

// Photon-number cutoffs for the reduced-dimension solver.  n_c bounds the
// per-receiver occupation inside the projected subspace; n_f is the ambient
// Fock truncation used when conjugating operators by displacements.
struct CutoffSpec {
  int n_c = 3;
  int n_f = 15;

  // Ambient margin of 12 keeps displacement tails below ~1e-10 for the
  // amplitudes this solver sees (|beta| well under 1).
  static CutoffSpec for_trusted(int m_trusted) {
    CutoffSpec c;
    c.n_c = m_trusted >= 2 ? 3 : 7;
    c.n_f = c.n_c + 12;
    return c;
  }

  // True when the ambient truncation is too tight for the displacement
  // amplitude, so conjugated operators would lose norm.
  bool truncation_risk(double beta_mag) const {
    return n_f < n_c + static_cast<int>(std::ceil(4.0 * beta_mag * beta_mag));
  }
};

}  // namespace cvqkd::sdp
