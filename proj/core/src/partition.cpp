#include "ssclab/partition.hpp"

#include <bit>
#include <stdexcept>

namespace ssclab {

namespace {

void check_args(std::uint32_t block, Index pos) {
  if (block < 1 || pos < 1) {
    throw std::invalid_argument("block and position are 1-based");
  }
  if (block > 48 || pos > (Index{1} << 48)) {
    throw std::overflow_error("partition coordinates out of supported range");
  }
}

}  // namespace

Index PartitionScheme::to_flat(std::uint32_t block, Index pos) const {
  check_args(block, pos);
  return ((pos << 1) - 1) << (block - 1);
}

std::pair<std::uint32_t, Index> PartitionScheme::from_flat(Index flat) const {
  if (flat < 1) throw std::invalid_argument("flat index is 1-based");
  const int tz = std::countr_zero(flat);
  const Index odd = flat >> tz;
  return {static_cast<std::uint32_t>(tz + 1), (odd + 1) >> 1};
}

Index PartitionScheme::first_pos_at_or_after(std::uint32_t block,
                                             Index flat) const {
  if (flat <= 1) return 1;
  const Index unit = Index{1} << (block - 1);
  const Index q = (flat + unit - 1) / unit;  // ceil(flat / 2^(block-1))
  // need 2m - 1 >= q
  return (q % 2 == 0) ? q / 2 + 1 : (q + 1) / 2;
}

Index PartitionScheme::count_upto(std::uint32_t block, Index flat) const {
  if (flat < (Index{1} << (block - 1))) return 0;
  return first_pos_at_or_after(block, flat + 1) - 1;
}

PartitionScheme default_scheme() { return {}; }

}  // namespace ssclab
