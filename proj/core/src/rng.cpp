#include "ssclab/rng.hpp"

namespace ssclab {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

double Rng::uniform() {
  // 53 random bits -> [0,1)
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) return 0;
  return next() % n;
}

Rng Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                std::uint64_t c) {
  std::uint64_t s = mix(seed + 0x632be59bd9b4e019ULL);
  s = mix(s ^ (a + 0x9e3779b97f4a7c15ULL));
  s = mix(s ^ (b + 0xd1b54a32d192ed03ULL));
  s = mix(s ^ (c + 0x8cb92ba72f3d8dd7ULL));
  return Rng(s);
}

}  // namespace ssclab
