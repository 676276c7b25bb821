#pragma once

#include "hardykit/field.hpp"
#include "hardykit/rng.hpp"
#include "hardykit/space.hpp"

namespace hardykit {

// One sampled gradient candidate in [0,1]^V. Families: indicators of metric
// annuli around the anchor, indicators of corridor complements between two
// random vertices, distance-profile bumps, uniform noise, and blends of an
// annulus with noise; each scaled by a random amplitude and clipped to [0,1].
// The families are adversarial for curve infima: they concentrate mass on
// walls the minimal curve has to cross or dodge.
Field sample_gradient_field(const Space& space, SplitMix64& rng, int anchor);

// Random connected space with n vertices: a random spanning tree plus a few
// extra edges, lengths in [len_lo, len_hi], measures in [mu_lo, mu_hi].
Space sample_connected_space(SplitMix64& rng, int n, double len_lo, double len_hi, double mu_lo,
                             double mu_hi);

// Random field with values in [-amp, amp].
Field sample_signed_field(const Space& space, SplitMix64& rng, double amp);

}  // namespace hardykit
