#pragma once

#include <cstdint>
#include <utility>

namespace ssclab {

/// 1-based coordinate number.
using Index = std::uint64_t;

/// Partition of the coordinate indices into countably many disjoint
/// infinite blocks, each enumerated by a strictly increasing sequence.
///
/// The realized scheme is the dyadic one: t(block, pos) = 2^(block-1) *
/// (2*pos - 1), a bijection (block, pos) -> flat index with O(1) inversion
/// (strip the power-of-two factor).
class PartitionScheme {
 public:
  /// Flat index of position `pos` in block `block` (both 1-based).
  Index to_flat(std::uint32_t block, Index pos) const;

  /// (block, pos) of a flat index.
  std::pair<std::uint32_t, Index> from_flat(Index flat) const;

  /// Smallest position m with to_flat(block, m) >= flat.
  Index first_pos_at_or_after(std::uint32_t block, Index flat) const;

  /// Number of positions m with to_flat(block, m) <= flat.
  Index count_upto(std::uint32_t block, Index flat) const;

  bool operator==(const PartitionScheme&) const = default;
};

PartitionScheme default_scheme();

}  // namespace ssclab
