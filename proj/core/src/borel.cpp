#include "ssclab/borel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ssclab/errors.hpp"
#include "ssclab/sampling.hpp"

namespace ssclab {

ClassIndex ClassIndex::additive(std::uint32_t alpha) {
  if (alpha < 1) throw std::invalid_argument("class index alpha >= 1");
  return {alpha, Kind::additive};
}

ClassIndex ClassIndex::multiplicative(std::uint32_t alpha) {
  if (alpha < 1) throw std::invalid_argument("class index alpha >= 1");
  return {alpha, Kind::multiplicative};
}

SetOracle closed_ball_oracle(SeqPoint center, double radius, double p) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be > 0");
  SetOracle o;
  o.closed = true;
  o.membership = [center, radius, p](const SeqPoint& x) {
    const Interval d = dist_p(x, center, p, std::max(kDefaultDepth,
                                                     max_explicit_index(x)));
    if (d.hi <= radius) return Verdict::yes();
    if (d.lo > radius) return Verdict::no();
    return Verdict::unknown("norm enclosure straddles the ball boundary");
  };
  o.distance = [center, radius](const SeqPoint& x, double pp, Index depth) {
    const Interval d = dist_p(x, center, pp, depth);
    return max(Interval{0.0, 0.0}, d - Interval{radius, radius});
  };
  return o;
}

SetOracle coord_equals_oracle(Index coordinate, double value) {
  SetOracle o;
  o.closed = true;
  o.membership = [coordinate, value](const SeqPoint& x) {
    return coord(x, coordinate) == value ? Verdict::yes() : Verdict::no();
  };
  // |coord(x,n) - value| lower-bounds the lp distance to the set and is
  // attained by overwriting that one coordinate.
  o.distance = [coordinate, value](const SeqPoint& x, double, Index) {
    const Interval d = abs(Interval(coord(x, coordinate)) - Interval(value));
    return d;
  };
  o.separable.push_back({coordinate, {value}});
  o.sample_member = [coordinate, value](Rng& rng) {
    SeqPoint x = random_finite_point(rng);
    return overwrite_value(x, coordinate, value);
  };
  return o;
}

// --- class membership ----------------------------------------------------

namespace {

// Shape of a representable point as seen by the block construction.
enum class Shape { finite, full, single_block };

Shape shape_of(const Tail& t) {
  switch (t.kind) {
    case TailKind::zero: return Shape::finite;
    case TailKind::masked: return Shape::single_block;
    default: return Shape::full;  // geometric, powerlaw, surrogate
  }
}

// Membership of a point of the given shape in the additive class alpha.
//
// alpha = 1 is the finite-support set. For alpha = beta + 1, a point is a
// member iff all but finitely many block projections lie in the complement
// of the beta-class set. Projections of a finite-support point are finite
// in every block; projections of a full-support tail are full in every
// block; a masked tail is full in its own block and finite elsewhere, and
// the single exceptional block never affects the eventually-all quantifier.
bool additive_member(Shape s, std::uint32_t alpha) {
  if (alpha == 1) return s == Shape::finite;
  const Shape eventual = (s == Shape::full) ? Shape::full : Shape::finite;
  return !additive_member(eventual, alpha - 1);
}

}  // namespace

Verdict class_membership(const SeqPoint& x, const ClassIndex& c,
                         const PartitionScheme& /*scheme*/) {
  if (c.alpha < 1) return Verdict::unknown("invalid class index");
  const Shape s = shape_of(x.tail);
  const bool in_additive = additive_member(s, c.alpha);
  const bool member =
      (c.kind == ClassIndex::Kind::additive) ? in_additive : !in_additive;
  return member ? Verdict::yes() : Verdict::no();
}

CheckReport class_is_s_open_check(const ClassIndex& c, int samples,
                                  std::uint64_t seed) {
  CheckReport report;
  const PartitionScheme scheme = default_scheme();
  int checked = 0;
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng::derive(seed, 0x50e4, static_cast<std::uint64_t>(i));
    const SeqPoint x = random_decidable_point(rng);
    // a random point of sigma_1(x): change one coordinate (or none)
    const Index t = 1 + rng.below(24);
    const double v = rng.below(4) == 0 ? 0.0 : rng.uniform(-2.0, 2.0);
    SeqPoint y;
    try {
      y = overwrite_value(x, t, v);
    } catch (const UnrepresentableError&) {
      continue;
    }
    const Verdict vx = class_membership(x, c, scheme);
    const Verdict vy = class_membership(y, c, scheme);
    if (!vx.decided() || !vy.decided()) continue;
    ++checked;
    if (vx.truth != vy.truth) {
      report.witnesses.push_back(x);
      report.witnesses.push_back(y);
    }
  }
  std::ostringstream notes;
  if (samples == 0) {
    notes << "vacuous pass: no samples requested";
  } else {
    notes << checked << "/" << samples
          << " sampled sigma_1 perturbations preserved membership";
  }
  report.notes = notes.str();
  report.verdict = report.witnesses.empty() ? Verdict::yes() : Verdict::no();
  return report;
}

// --- contracting images ----------------------------------------------------

namespace {

constexpr double kDistanceWidthCap = 1e-9;

Interval chain_distance(const SetOracle& oracle, const SeqPoint& x, double p,
                        Index depth) {
  if (!oracle.distance) {
    throw std::invalid_argument("chain oracle lacks a distance capability");
  }
  const Interval d = min(oracle.distance(x, p, depth), Interval{1.0, 1.0});
  if (d.width() > kDistanceWidthCap) {
    throw WidthExceededError("distance interval " + d.str() +
                             " too wide for a sound image");
  }
  return d;
}

}  // namespace

SeqPoint contracting_image(const SetOracle& repeated, const SeqPoint& x,
                           double p, Index depth) {
  const Interval d = chain_distance(repeated, x, p, depth);
  const double mid = d.mid();
  // constant chain: coordinates mid/3^n form an exact geometric tail
  return make_point({}, Tail::geometric(mid / 3.0, 1.0 / 3.0, 1));
}

SeqPoint contracting_image(const std::vector<SetOracle>& chain,
                           const SeqPoint& x, double p, Index depth) {
  if (chain.empty()) throw std::invalid_argument("empty oracle chain");
  if (chain.size() == 1) return contracting_image(chain.front(), x, p, depth);
  std::vector<std::pair<Index, double>> coords;
  coords.reserve(static_cast<std::size_t>(depth));
  double scale = 1.0;
  for (Index n = 1; n <= depth; ++n) {
    scale /= 3.0;
    const std::size_t pick = std::min<std::size_t>(static_cast<std::size_t>(n) - 1,
                                                   chain.size() - 1);
    const Interval d = chain_distance(chain[pick], x, p, depth);
    const double v = d.mid() * scale;
    if (v != 0.0) coords.emplace_back(n, v);
  }
  return make_point(std::span<const std::pair<Index, double>>(coords),
                    Tail::zero());
}

SeqPoint successor_image(const BlockMapFamily& family, const SeqPoint& x,
                         const PartitionScheme& scheme, Index depth) {
  std::vector<std::pair<Index, double>> coords;
  coords.reserve(static_cast<std::size_t>(depth));
  double scale = 1.0 / 3.0;
  for (Index k = 1; k <= depth; ++k) {
    scale /= 3.0;  // 3^-(k+1)
    const auto [block, pos] = scheme.from_flat(k);
    const CoordStream stream = family(block, x);
    const double raw = stream(pos);
    if (!(std::fabs(raw) <= 1.0)) {
      throw std::invalid_argument(
          "successor sub-map violates the |value| <= 1 bound");
    }
    const double v = raw * scale;
    if (v != 0.0) coords.emplace_back(k, v);
  }
  return make_point(std::span<const std::pair<Index, double>>(coords),
                    Tail::zero());
}

FixedPointResult fixed_point(const std::function<SeqPoint(const SeqPoint&)>& map,
                             const SeqPoint& x0, double p, double tol,
                             int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  SeqPoint x = x0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const SeqPoint next = map(x);
    const Index depth = std::max({kDefaultDepth, max_explicit_index(x),
                                  max_explicit_index(next)});
    const Interval residual = dist_trunc(x, next, p, depth);
    if (residual.hi < tol) {
      return {x, residual, iter};
    }
    x = next;
  }
  throw NoConvergenceError("no fixed point within the iteration budget");
}

double baire2_indicator_a1(const SeqPoint& x, Index m, Index j) {
  if (m < 1 || j < 1) throw std::invalid_argument("m and j are 1-based");
  const Index last = m + j;
  double window_max = 0.0;
  // explicit coordinates inside [m, m+j]
  for (const auto& [n, v] : x.coords) {
    if (n < m) continue;
    if (n > last) break;
    window_max = std::max(window_max, std::fabs(v));
  }
  // tail values decay in magnitude, so the leftmost active position in the
  // window dominates the rest
  if (!x.tail.is_zero()) {
    const Index tfs = tail_flat_start(x.tail);
    Index n = std::max(m, tfs);
    if (x.tail.kind == TailKind::masked) {
      const PartitionScheme scheme = default_scheme();
      const Index pos = std::max(
          scheme.first_pos_at_or_after(x.tail.block, n), x.tail.active_from);
      n = scheme.to_flat(x.tail.block, pos);
    }
    if (n <= last) {
      window_max = std::max(window_max, std::fabs(tail_value(x.tail, n)));
    }
  }
  return std::max(0.0, 1.0 - static_cast<double>(j) * window_max);
}

}  // namespace ssclab
