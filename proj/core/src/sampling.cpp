#include "ssclab/sampling.hpp"

#include <cmath>
#include <vector>

namespace ssclab {

SeqPoint random_finite_point(Rng& rng, Index max_index, int max_support,
                             double amplitude) {
  const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_support) + 1));
  std::vector<std::pair<Index, double>> coords;
  coords.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const Index n = 1 + rng.below(max_index);
    double v = rng.uniform(-amplitude, amplitude);
    bool dup = false;
    for (const auto& [m, _] : coords) {
      if (m == n) { dup = true; break; }
    }
    if (!dup) coords.emplace_back(n, v);
  }
  return make_point(std::span<const std::pair<Index, double>>(coords),
                    Tail::zero());
}

SeqPoint random_geometric_point(Rng& rng) {
  const double c = rng.uniform(0.2, 2.0) * (rng.below(2) ? 1.0 : -1.0);
  const double r = rng.uniform(0.15, 0.85) * (rng.below(4) ? 1.0 : -1.0);
  const Index start = 1 + rng.below(4);
  std::vector<std::pair<Index, double>> coords;
  for (Index n = 1; n < start; ++n) {
    if (rng.below(2)) coords.emplace_back(n, rng.uniform(-2.0, 2.0));
  }
  std::erase_if(coords, [](const auto& e) { return e.second == 0.0; });
  return make_point(std::span<const std::pair<Index, double>>(coords),
                    Tail::geometric(c, r, start));
}

SeqPoint random_powerlaw_point(Rng& rng) {
  const double c = rng.uniform(0.2, 2.0) * (rng.below(2) ? 1.0 : -1.0);
  const double s = rng.uniform(1.5, 3.5);
  const Index start = 1 + rng.below(4);
  std::vector<std::pair<Index, double>> coords;
  for (Index n = 1; n < start; ++n) {
    if (rng.below(2)) coords.emplace_back(n, rng.uniform(-2.0, 2.0));
  }
  std::erase_if(coords, [](const auto& e) { return e.second == 0.0; });
  return make_point(std::span<const std::pair<Index, double>>(coords),
                    Tail::powerlaw(c, s, start));
}

SeqPoint random_masked_point(Rng& rng, std::uint32_t max_block) {
  const auto block = static_cast<std::uint32_t>(1 + rng.below(max_block));
  const double c = rng.uniform(0.2, 2.0);
  const double r = rng.uniform(0.2, 0.8);
  const Tail inner = Tail::geometric(c, r, 1 + rng.below(3));
  return make_point(std::span<const std::pair<Index, double>>{},
                    Tail::masked(inner, block));
}

SeqPoint random_decidable_point(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return random_finite_point(rng);
    case 1: return random_geometric_point(rng);
    case 2: return random_powerlaw_point(rng);
    default: return random_masked_point(rng);
  }
}

SeqPoint random_ball_interior_point(Rng& rng, double p, double radius) {
  for (;;) {
    SeqPoint x = random_finite_point(rng, 16, 5, 1.0);
    const Interval norm = p_norm(x, p, kDefaultDepth);
    if (norm.hi < radius) return x;
    // rescale toward the interior and retry if rounding still spills over
    const double target = radius * rng.uniform(0.1, 0.8);
    const double scale = target / std::max(norm.hi, 1e-300);
    std::vector<std::pair<Index, double>> coords = x.coords;
    for (auto& [n, v] : coords) v *= scale;
    SeqPoint y = make_point(std::span<const std::pair<Index, double>>(coords),
                            Tail::zero());
    if (p_norm(y, p, kDefaultDepth).hi < radius) return y;
  }
}

}  // namespace ssclab
