#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ssclab/interval.hpp"
#include "ssclab/partition.hpp"

namespace ssclab {

inline constexpr Index kDefaultDepth = 64;

enum class TailKind : std::uint8_t { zero, geometric, powerlaw, masked, surrogate };

/// Closed-form description of all coordinates from some index on.
///
///   geometric  value(n) = c * r^(n - anchor)   for n >= active_from
///   powerlaw   value(n) = c * n^(-s)           for n >= active_from
///   masked     the formula lives inside one block of the default dyadic
///              partition: position m of block `block` (flat index
///              t(block, m)) carries formula(m); every other coordinate is
///              zero. Projecting onto its block recovers the plain formula.
///   surrogate  result of projecting a full-support tail onto a block:
///              value(m) = formula(to_flat(block, m)). Carries no closed
///              form of its own; membership tests and lp bounds only.
///
/// `anchor` pins the geometric formula: overwriting a tail coordinate only
/// advances `active_from` and materializes prefix values, so the exact same
/// doubles are reproduced no matter in which order overwrites happen.
struct Tail {
  TailKind kind = TailKind::zero;
  TailKind formula = TailKind::zero;  // geometric/powerlaw for masked & surrogate
  double c = 0.0;
  double a = 0.0;  // ratio r (|r| < 1) or exponent s (> 1)
  Index anchor = 1;
  Index active_from = 1;
  std::uint32_t block = 0;

  static Tail zero();
  static Tail geometric(double c, double r, Index start);
  static Tail powerlaw(double c, double s, Index start);
  static Tail masked(const Tail& inner, std::uint32_t block);

  bool is_zero() const { return kind == TailKind::zero; }

  bool operator==(const Tail&) const = default;
};

/// First flat index at or beyond which the tail may be nonzero.
/// Returns kNoTailStart for the zero tail.
inline constexpr Index kNoTailStart = ~Index{0};
Index tail_flat_start(const Tail& t);

/// Exact double value the tail contributes at flat index n (0 off-support).
double tail_value(const Tail& t, Index n);

/// Certified upper bound of sum_{n > depth} |tail(n)|^p, as [0, bound].
Interval tail_p_mass_beyond(const Tail& t, double p, Index depth);

/// A point of every lp (p >= 1): finitely many explicit coordinates plus a
/// closed-form tail. Canonical form: explicit entries sorted by index,
/// no zero values, all indices below the tail's flat start, and the tail
/// absorbed as far down as its formula matches stored values.
struct SeqPoint {
  std::vector<std::pair<Index, double>> coords;  // sorted, canonical
  Tail tail;

  bool operator==(const SeqPoint&) const = default;
};

SeqPoint make_point(std::span<const std::pair<Index, double>> explicit_coords,
                    Tail tail);
SeqPoint make_point(std::initializer_list<std::pair<Index, double>> coords,
                    Tail tail = Tail::zero());
SeqPoint zero_point();
SeqPoint unit_vector(Index n, double scale = 1.0);

/// n-th coordinate: explicit lookup, else tail formula, else 0.
double coord(const SeqPoint& x, Index n);

Index max_explicit_index(const SeqPoint& x);
bool finite_support(const SeqPoint& x);

/// Indices <= depth whose coordinate evaluates nonzero, sorted.
std::vector<Index> support_upto(const SeqPoint& x, Index depth);

/// The point equal to x except coordinate t takes a's value there.
SeqPoint overwrite(const SeqPoint& x, Index t, const SeqPoint& a);
SeqPoint overwrite_value(const SeqPoint& x, Index t, double v);

/// Number of coordinates in which two points differ.
struct SigmaOrder {
  bool finite = false;
  std::uint64_t count = 0;  // valid when finite

  static SigmaOrder finite_of(std::uint64_t k) { return {true, k}; }
  static SigmaOrder infinite() { return {false, 0}; }
  bool operator==(const SigmaOrder&) const = default;
};

SigmaOrder sigma_order(const SeqPoint& x, const SeqPoint& a);

/// Relabels the block's coordinates to 1,2,3,... via pos -> t(block, pos).
/// Zero and masked tails project exactly; a full-support geometric/powerlaw
/// tail projects to a surrogate usable only for membership and lp bounds.
SeqPoint project(const SeqPoint& x, std::uint32_t block,
                 const PartitionScheme& scheme);

/// Certified enclosure of ||x||_p. Requires depth >= max explicit index.
Interval p_norm(const SeqPoint& x, double p, Index depth = kDefaultDepth);

/// Certified enclosure of d_p(x, y) = ||x - y||_p.
Interval dist_p(const SeqPoint& x, const SeqPoint& y, double p,
                Index depth = kDefaultDepth);

/// min{d_p(x,y), 1}: the bounded metric used by the contraction machinery.
Interval dist_trunc(const SeqPoint& x, const SeqPoint& y, double p,
                    Index depth = kDefaultDepth);

}  // namespace ssclab
