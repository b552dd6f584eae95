#pragma once

#include <complex>

#include "cvqkd/protocol/spec.hpp"

namespace cvqkd::protocol {

// Maps a heterodyne outcome to a key symbol. Outcomes inside the central
// disk of radius delta_r map to kDiscard; otherwise the phase-space angle
// selects one of n_states wedges, each centred on a constellation point.
int key_region(std::complex<double> outcome, int n_states, double delta_r);

inline int key_region(std::complex<double> outcome, const ProtocolSpec& spec) {
  return key_region(outcome, spec.n_states(), spec.delta_r);
}

}  // namespace cvqkd::protocol
