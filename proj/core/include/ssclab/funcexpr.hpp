#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ssclab/borel.hpp"
#include "ssclab/interval.hpp"
#include "ssclab/partition.hpp"
#include "ssclab/seqpoint.hpp"
#include "ssclab/verdict.hpp"

namespace ssclab {

/// An open region G of lp together with distance-to-complement geometry.
/// Ball(center, radius) is the open metric ball; WholeSpace has empty
/// complement; OracleRegion plugs in arbitrary capabilities.
class RegionSpec {
 public:
  enum class Kind : std::uint8_t { ball, whole_space, oracle };

  static RegionSpec ball(SeqPoint center, double radius, double p);
  static RegionSpec whole_space();
  static RegionSpec oracle(
      std::function<Interval(const SeqPoint&, Index)> dist_to_complement,
      std::function<Verdict(const SeqPoint&)> member);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  double radius() const { return radius_; }
  const SeqPoint& center() const { return center_; }

  /// Is x a member of the (open) region?
  Verdict contains(const SeqPoint& x, Index depth = kDefaultDepth) const;
  /// Certified d_p(x, complement of the region); infinite distances are
  /// clamped to [1, 1+] by callers through the truncated metric.
  Interval dist_to_complement(const SeqPoint& x,
                              Index depth = kDefaultDepth) const;

 private:
  Kind kind_ = Kind::whole_space;
  SeqPoint center_;
  double radius_ = 0.0;
  double p_ = 2.0;
  std::function<Interval(const SeqPoint&, Index)> dist_;
  std::function<Verdict(const SeqPoint&)> member_;
};

/// Countable discrete point family with a declared growth bound
/// gamma(n) <= d_p(0, generator(n)), monotone and unbounded — the pruning
/// certificate for nearest-member search. norm_upper, when present, bounds
/// ||generator(n)|| from above and lets the search skip the low range too.
struct PointFamily {
  std::function<SeqPoint(Index)> generator;      // n >= 1
  std::function<double(Index)> growth_bound;     // monotone, -> infinity
  std::function<double(Index)> norm_upper;       // optional
};

/// Certified distance from x to the family {generator(n)}.
Interval dist_to_family(const PointFamily& family, const SeqPoint& x, double p,
                        Index depth);

/// Weierstrass data for a uniformly convergent series: per-term bounds and
/// a certified upper bound on the remaining sum.
struct SummableBounds {
  std::function<double(int)> at;        // bound for term n (1-based)
  std::function<double(int)> tail_sum;  // upper bound of sum_{k > n} at(k)
};

struct Evaluation {
  Interval value{0.0, 0.0};
  bool known = true;  // false: a needed classification was unavailable
};

struct Bump {
  Index coordinate = 1;
  double center = 0.0;
  double halfwidth = 1.0;
};

/// Immutable expression tree over real-valued functions on lp, evaluable to
/// certified intervals at representable points.
class FuncExpr {
 public:
  FuncExpr() = default;

  static FuncExpr constant(double c);
  /// Indicator of the additive/multiplicative class-alpha set.
  static FuncExpr chi_class(ClassIndex c, PartitionScheme scheme);
  /// phi(x) * g(x): distance-to-complement capped at 1, times
  /// exp(-sum |x_n|) on finite-support points and 1 elsewhere. Discontinuous
  /// exactly on the region.
  static FuncExpr prescribed_discontinuity(RegionSpec region, double p);
  /// The quotient d(x,F1) / (d(x,F1) + d(x,F2)) over the two built-in
  /// escape families.
  static FuncExpr example41();
  /// Product of piecewise-linear hats over the listed coordinates,
  /// 1 elsewhere; vanishing exactly off the open box.
  static FuncExpr product_bump(std::vector<Bump> bumps, SeqPoint base);
  static FuncExpr uniform_series(std::function<FuncExpr(int)> terms,
                                 SummableBounds bounds);
  /// Serializable geometric-weight series: sum_n ratio^n * base.
  static FuncExpr uniform_series_geometric(double ratio, FuncExpr base);

  friend FuncExpr add(FuncExpr lhs, FuncExpr rhs);
  friend FuncExpr sub(FuncExpr lhs, FuncExpr rhs);
  friend FuncExpr mul(FuncExpr lhs, FuncExpr rhs);
  friend FuncExpr abs_of(FuncExpr arg);
  friend FuncExpr min_of(FuncExpr lhs, FuncExpr rhs);
  friend FuncExpr max_of(FuncExpr lhs, FuncExpr rhs);

  Evaluation eval(const SeqPoint& x, Index depth = kDefaultDepth) const;

  bool valid() const { return node_ != nullptr; }

  struct Node;
  const Node* node() const { return node_.get(); }
  static FuncExpr wrap(std::shared_ptr<const Node> node) {
    return FuncExpr(std::move(node));
  }

 private:
  explicit FuncExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Expression node, exposed for tree walkers (serialization, region
/// collection). Only the fields matching `kind` are meaningful.
struct FuncExpr::Node {
  enum class Kind : std::uint8_t {
    constant,
    chi_class,
    phi_g,
    example41,
    product_bump,
    add,
    sub,
    mul,
    abs,
    min,
    max,
    series_geometric,
    series_general,
  };

  Kind kind = Kind::constant;
  double value = 0.0;                     // constant
  ClassIndex cls;                         // chi_class
  PartitionScheme scheme;                 // chi_class
  RegionSpec region;                      // phi_g
  double p = 2.0;                         // phi_g
  std::vector<Bump> bumps;                // product_bump
  SeqPoint base;                          // product_bump
  std::shared_ptr<const Node> lhs, rhs;   // combinators; series base in lhs
  double ratio = 0.0;                     // series_geometric
  std::function<FuncExpr(int)> terms;     // series_general
  SummableBounds bounds;                  // series_general
};

/// The prescribed-discontinuity regions appearing in the expression,
/// with their p, in tree order.
std::vector<std::pair<RegionSpec, double>> collect_regions(const FuncExpr& f);

FuncExpr add(FuncExpr lhs, FuncExpr rhs);
FuncExpr sub(FuncExpr lhs, FuncExpr rhs);
FuncExpr mul(FuncExpr lhs, FuncExpr rhs);
FuncExpr abs_of(FuncExpr arg);
FuncExpr min_of(FuncExpr lhs, FuncExpr rhs);
FuncExpr max_of(FuncExpr lhs, FuncExpr rhs);

/// The two Example-4.1 families. x_n carries 1/n at coordinate 1 and n at
/// coordinate n (n at coordinate 2 for n = 1, keeping the families
/// disjoint); y_n is n at coordinate n.
SeqPoint example41_x(Index n);
SeqPoint example41_y(Index n);
PointFamily example41_family_x();
PointFamily example41_family_y();

/// Finite section of f at a: the map (v_1..v_k) -> f(a with the coordinates
/// T0 overwritten by v).
class FiniteSection {
 public:
  FiniteSection(FuncExpr f, SeqPoint a, std::vector<Index> t0);
  Evaluation operator()(std::span<const double> values,
                        Index depth = kDefaultDepth) const;
  const std::vector<Index>& coordinates() const { return t0_; }

 private:
  FuncExpr f_;
  SeqPoint a_;
  std::vector<Index> t0_;
};

FiniteSection finite_section(FuncExpr f, SeqPoint a, std::vector<Index> t0);

}  // namespace ssclab
