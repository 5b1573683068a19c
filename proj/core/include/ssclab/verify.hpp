#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ssclab/borel.hpp"
#include "ssclab/funcexpr.hpp"
#include "ssclab/report.hpp"
#include "ssclab/seqpoint.hpp"

namespace ssclab {

/// Which convergence x -> a means: the p-norm metric or coordinatewise.
struct TopologyMode {
  enum class Kind : std::uint8_t { norm, pointwise };
  Kind kind = Kind::norm;
  double p = 2.0;

  static TopologyMode norm_p(double p);
  static TopologyMode pointwise() { return {Kind::pointwise, 2.0}; }
};

enum class ApproachStyle : std::uint8_t {
  coordinate_perturb,   // one random coordinate nudged within the radius
  random_direction,     // random finite-support direction scaled into the ball
  pointwise_escape,     // small change at t plus a growing far spike
};

/// How "x -> a" is sampled: a decreasing radius ladder with a fixed number
/// of draws per rung. Identical seeds reproduce identical samples.
struct ApproachSchedule {
  std::vector<double> radii;  // strictly decreasing to 0
  int samples_per_radius = 32;
  std::uint64_t seed = 0;
  ApproachStyle style = ApproachStyle::random_direction;

  /// radii 2^-j for j = 0..j_max.
  static ApproachSchedule standard(std::uint64_t seed,
                                   ApproachStyle style =
                                       ApproachStyle::random_direction,
                                   int j_max = 20, int samples = 32);
};

struct Infeasible {
  std::string reason;
};
using WitnessResult = std::variant<SeqPoint, Infeasible>;

/// Checks strong separate continuity of f at a with respect to coordinate
/// t: samples x approaching a, evaluates |f(x) - f(x_t^a)| as certified
/// intervals, and requires the per-radius sups to fall below tol on the
/// innermost rungs. False needs a certified witness; anything else is
/// Unknown.
CheckReport ssc_check(const FuncExpr& f, const SeqPoint& a, Index t,
                      const TopologyMode& topo, const ApproachSchedule& sched,
                      double tol, Index depth = kDefaultDepth);

/// Same ladder with gap(x) = |f(x) - f(x0)|. Prescribed-discontinuity
/// leaves contribute constructive escape candidates, so points of the
/// region are refuted by witness rather than by luck.
CheckReport continuity_check(const FuncExpr& f, const SeqPoint& x0,
                             const TopologyMode& topo,
                             const ApproachSchedule& sched, double tol,
                             Index depth = kDefaultDepth);

/// The constructive discontinuity witness for f = phi*g on region G at
/// x0 in G: a finite-support y with ||x0 - y||_p < delta and
/// f(x0) - f(y) > f(x0)/2, built from a sign-matched harmonic block.
/// Returns Infeasible when no block satisfies both constraints (expected
/// at p = 1 with small l1 mass).
WitnessResult discontinuity_witness(const RegionSpec& G, double p,
                                    const SeqPoint& x0, double delta,
                                    Index depth = kDefaultDepth);

/// The separate-continuity modulus at x0 in G:
/// min{dist to the complement, eps/4, ln(1 + eps/2)}; the middle term is
/// +infinity for the whole space (phi is constant there).
double ssc_modulus(const RegionSpec& G, double p, const SeqPoint& x0, Index k,
                   double eps, Index depth = kDefaultDepth);

/// Empirical Lipschitz constant of a point map in the truncated metric:
/// sup over sampled pairs of d(f x, f y) / d(x, y), pairs with vanishing
/// denominator skipped.
double lipschitz_ratio(const std::function<SeqPoint(const SeqPoint&)>& map,
                       int pairs, double p, std::uint64_t seed);

/// Product-form neighborhood: finitely many constrained coordinates around
/// a base point (open intervals), unconstrained elsewhere.
struct NearlyOpenBox {
  struct Side {
    Index coordinate = 1;
    double lo = 0.0;
    double hi = 1.0;
  };
  SeqPoint base;
  std::vector<Side> sides;

  SeqPoint center() const;
};

struct FalsifyResult {
  enum class Outcome : std::uint8_t {
    emptiness_certified,
    member_found,
    unknown
  };
  Outcome outcome = Outcome::unknown;
  std::optional<SeqPoint> member;
  std::string note;
};

/// Looks for members of E inside the box (budget-limited grid search) and
/// certifies emptiness when E's coordinate-separable constraints exclude a
/// constrained coordinate of the box entirely.
FalsifyResult superdensity_falsify(const SetOracle& E, const NearlyOpenBox& box,
                                   int budget, std::uint64_t seed);

/// Requires a certified-empty box; builds the product bump over it and the
/// zero function, checks both vanish on sampled members of E while the bump
/// is positive at the box center — exhibiting E as non-determining.
CheckReport determining_demo(const SetOracle& E, const NearlyOpenBox& box,
                             int samples, std::uint64_t seed);

}  // namespace ssclab
