#pragma once

#include "cvqkd/protocol/spec.hpp"

namespace cvqkd::lossonly {

// Holevo information chi(B_j : E) of the post-key-map ensemble, conditioned
// on kept rounds, for a loss-only channel.

// Direct route: Eve keeps one tap mode per output port; the joint tap states
// live in an n_states-dimensional orthonormal frame. PSK only.
double holevo_direct(const protocol::ProtocolSpec& spec, double eta,
                     int n_bobs, const protocol::JointDistribution& joint);

// Reduced route: Eve coherently combines her ports into a single mode of
// amplitude sqrt(1 - m_trusted*eta/n_bobs) * alpha_x. Works for arbitrary
// constellations; cost independent of n_bobs.
double holevo_reduced(const protocol::ProtocolSpec& spec, double eta,
                      int n_bobs, int m_trusted,
                      const protocol::JointDistribution& joint);

}  // namespace cvqkd::lossonly
