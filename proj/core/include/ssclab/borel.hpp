#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ssclab/interval.hpp"
#include "ssclab/partition.hpp"
#include "ssclab/report.hpp"
#include "ssclab/rng.hpp"
#include "ssclab/seqpoint.hpp"
#include "ssclab/verdict.hpp"

namespace ssclab {

/// Level of the Borel hierarchy, finite successor chain only.
/// additive alpha = the sets built by the countable-union step;
/// multiplicative alpha = their complements.
struct ClassIndex {
  std::uint32_t alpha = 1;
  enum class Kind : std::uint8_t { additive, multiplicative };
  Kind kind = Kind::additive;

  static ClassIndex additive(std::uint32_t alpha);
  static ClassIndex multiplicative(std::uint32_t alpha);

  bool operator==(const ClassIndex&) const = default;
};

/// A subset of lp exposed through capabilities. `membership` is mandatory;
/// `distance` certifies d(x, C) and is required by the contraction builder;
/// the optional capabilities back the verification harness: `separable`
/// describes coordinate-wise membership constraints (conjunction), and
/// `sample_member` draws members for agreement demos.
struct SetOracle {
  std::function<Verdict(const SeqPoint&)> membership;
  std::function<Interval(const SeqPoint&, double, Index)> distance;
  bool closed = false;

  struct CoordConstraint {
    Index coordinate = 1;
    std::vector<double> allowed;  // membership forces the coordinate into this finite set
  };
  std::vector<CoordConstraint> separable;
  std::function<SeqPoint(Rng&)> sample_member;
};

/// Closed ball {x : ||x - center||_p <= radius} with exact distance
/// max{0, d_p(x, center) - radius}.
SetOracle closed_ball_oracle(SeqPoint center, double radius, double p);

/// {x : coord(x, n) = value} — closed, coordinate-separable, samplable.
SetOracle coord_equals_oracle(Index coordinate, double value);

/// Membership of a representable point in the additive/multiplicative
/// class-alpha set of the inductive block construction. Decidability rests
/// on the structural facts: a finite-support point projects to a
/// finite-support point in every block, a full-support tail to an
/// infinite-support point in every block, and a masked tail has infinite
/// support in exactly one block.
Verdict class_membership(const SeqPoint& x, const ClassIndex& c,
                         const PartitionScheme& scheme);

/// Samples random decidable points and single-coordinate perturbations and
/// confirms that membership never changes inside sigma_1(x).
CheckReport class_is_s_open_check(const ClassIndex& c, int samples,
                                  std::uint64_t seed);

/// Image of x under the contracting map built from a chain of closed sets:
/// coordinate n is d(x, C_n) / 3^n with d the truncated metric. A constant
/// chain produces the exact geometric representation; mixed chains are
/// truncated at `depth`. Throws WidthExceededError if a distance interval
/// is wider than 1e-9.
SeqPoint contracting_image(const std::vector<SetOracle>& chain,
                           const SeqPoint& x, double p,
                           Index depth = kDefaultDepth);
SeqPoint contracting_image(const SetOracle& repeated, const SeqPoint& x,
                           double p, Index depth = kDefaultDepth);

/// Per-block coordinate streams for the successor-step map.
using CoordStream = std::function<double(Index m)>;
using BlockMapFamily =
    std::function<CoordStream(std::uint32_t block, const SeqPoint& x)>;

/// Successor-step image: coordinate k is 3^-(k+1) times coordinate m(k) of
/// the block-n(k) stream, where (n(k), m(k)) = from_flat(k). Streams must
/// stay within [-1, 1]; violations are rejected.
SeqPoint successor_image(const BlockMapFamily& family, const SeqPoint& x,
                         const PartitionScheme& scheme,
                         Index depth = kDefaultDepth);

struct FixedPointResult {
  SeqPoint point;
  Interval residual{0.0, 0.0};
  int iterations = 0;
};

/// Banach iteration x <- map(x) until dist_trunc(x, map(x)).hi < tol.
/// Throws NoConvergenceError after max_iter steps.
FixedPointResult fixed_point(const std::function<SeqPoint(const SeqPoint&)>& map,
                             const SeqPoint& x0, double p, double tol,
                             int max_iter);

/// h_{m,j}(x) = max{0, 1 - j * max_{m <= n <= m+j} |x_n|}. The iterated
/// limit lim_m lim_j equals the finite-support indicator on representable
/// points, exhibiting it as a double pointwise limit of continuous
/// functions.
double baire2_indicator_a1(const SeqPoint& x, Index m, Index j);

}  // namespace ssclab
