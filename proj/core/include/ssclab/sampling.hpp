#pragma once

#include "ssclab/rng.hpp"
#include "ssclab/seqpoint.hpp"

namespace ssclab {

/// Random point generators shared by the checkers and the test suites.
/// All draws come from the deterministic Rng, so a seed fixes the point.

/// Finite-support point: up to max_support coordinates among 1..max_index,
/// values uniform in [-amplitude, amplitude].
SeqPoint random_finite_point(Rng& rng, Index max_index = 24,
                             int max_support = 6, double amplitude = 2.0);

/// Full-support point with a geometric tail (plus a few explicit leading
/// coordinates below the tail start).
SeqPoint random_geometric_point(Rng& rng);

/// Full-support point with a powerlaw tail.
SeqPoint random_powerlaw_point(Rng& rng);

/// Point whose infinite support lies inside a single partition block.
SeqPoint random_masked_point(Rng& rng, std::uint32_t max_block = 4);

/// Mix of the above; every draw has decidable Borel-class membership.
SeqPoint random_decidable_point(Rng& rng);

/// Finite-support point with certified p-norm below radius.
SeqPoint random_ball_interior_point(Rng& rng, double p, double radius);

}  // namespace ssclab
