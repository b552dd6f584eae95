#pragma once

#include <limits>

#include "cvqkd/protocol/spec.hpp"

namespace cvqkd::lossonly {

// Which receivers cooperate. SomeTrusted(m): m of the n_bobs ports belong to
// a mutually trusting group, the rest are handed to Eve. FullyPrivate(m): the
// m legitimate receivers additionally do not trust each other, so the key
// must also be private against the best-informed other receiver.
struct TrustScenario {
  enum class Kind { SomeTrusted, FullyPrivate };
  Kind kind = Kind::SomeTrusted;
  int m_trusted = 1;

  static TrustScenario some_trusted(int m) {
    return {Kind::SomeTrusted, m};
  }
  static TrustScenario fully_private(int m) {
    return {Kind::FullyPrivate, m};
  }
};

struct LossOnlyRate {
  double rate = 0.0;          // beta*mi_ab - max(holevo, mi_bb_max)
  double rate_clamped = 0.0;  // max(rate, 0)
  double alpha_opt = std::numeric_limits<double>::quiet_NaN();
  bool alpha_at_boundary = false;
  double holevo = 0.0;    // pass-weighted chi(B_j:E)
  double mi_ab = 0.0;     // pass-weighted I(A:B_j)
  double mi_bb_max = 0.0; // pass-weighted max_i I(B_j,B_i), FullyPrivate only
};

// Asymptotic Devetak-Winter rate for a loss-only channel at fixed amplitude.
LossOnlyRate dw_rate(const TrustScenario& scenario,
                     const protocol::ProtocolSpec& spec, double eta,
                     int n_bobs, double beta_rec);

}  // namespace cvqkd::lossonly
