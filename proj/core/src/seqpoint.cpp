#include "ssclab/seqpoint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssclab/errors.hpp"

namespace ssclab {

namespace {

const PartitionScheme kScheme = default_scheme();

// Hard cap on how many tail coordinates an overwrite may materialize.
constexpr Index kMaterializeCap = Index{1} << 21;

void require_formula_kind(TailKind k) {
  if (k != TailKind::geometric && k != TailKind::powerlaw) {
    throw std::invalid_argument("expected a geometric or powerlaw formula");
  }
}

// Formula value at a native position, ignoring the active boundary.
double formula_value(const Tail& t, Index n) {
  if (t.formula == TailKind::geometric) {
    const auto e = static_cast<double>(static_cast<std::int64_t>(n) -
                                       static_cast<std::int64_t>(t.anchor));
    return t.c * std::pow(t.a, e);
  }
  return t.c * std::pow(static_cast<double>(n), -t.a);
}

// --- native-position view of a tail ------------------------------------
//
// geometric/powerlaw: positions are flat indices.
// masked:             positions are the block's position numbers.
// surrogate:          positions are projected indices; the source formula
//                     is evaluated at to_flat(block, m).

Index native_boundary(const Tail& t) {
  if (t.kind == TailKind::surrogate) {
    return kScheme.first_pos_at_or_after(t.block, t.active_from);
  }
  return t.active_from;
}

Index native_floor(const Tail& t) {
  if (t.kind == TailKind::surrogate) {
    return kScheme.first_pos_at_or_after(t.block, t.anchor);
  }
  return t.anchor;
}

Index storage_index(const Tail& t, Index pos) {
  if (t.kind == TailKind::masked) return kScheme.to_flat(t.block, pos);
  return pos;
}

double value_at_position(const Tail& t, Index pos) {
  if (t.kind == TailKind::surrogate) {
    return formula_value(t, kScheme.to_flat(t.block, pos));
  }
  return formula_value(t, pos);
}

void set_boundary(Tail& t, Index pos) {
  if (t.kind == TailKind::surrogate) {
    t.active_from = kScheme.to_flat(t.block, pos);
  } else {
    t.active_from = pos;
  }
}

using CoordVec = std::vector<std::pair<Index, double>>;

CoordVec::const_iterator find_coord(const CoordVec& v, Index n) {
  auto it = std::lower_bound(
      v.begin(), v.end(), n,
      [](const std::pair<Index, double>& e, Index k) { return e.first < k; });
  return (it != v.end() && it->first == n) ? it : v.end();
}

// Pull the active boundary back down over explicit entries that match the
// formula exactly; keeps overwrite round-trips structurally stable.
void absorb(SeqPoint& x) {
  if (x.tail.is_zero()) return;
  Index b = native_boundary(x.tail);
  const Index floor = native_floor(x.tail);
  bool changed = false;
  while (b > floor) {
    const Index q = b - 1;
    const Index idx = storage_index(x.tail, q);
    auto it = find_coord(x.coords, idx);
    if (it == x.coords.end()) break;
    if (it->second != value_at_position(x.tail, q)) break;
    x.coords.erase(x.coords.begin() + (it - x.coords.begin()));
    b = q;
    changed = true;
  }
  if (changed) set_boundary(x.tail, b);
}

void drop_zeros(CoordVec& v) {
  std::erase_if(v, [](const std::pair<Index, double>& e) {
    return e.second == 0.0;
  });
}

}  // namespace

// --- Tail ---------------------------------------------------------------

Tail Tail::zero() { return Tail{}; }

Tail Tail::geometric(double c, double r, Index start) {
  if (!std::isfinite(c) || !std::isfinite(r)) {
    throw std::invalid_argument("geometric tail parameters must be finite");
  }
  if (std::fabs(r) >= 1.0) {
    throw std::invalid_argument("geometric tail requires |r| < 1");
  }
  if (start < 1) throw std::invalid_argument("tail start is 1-based");
  if (c == 0.0) return zero();
  Tail t;
  t.kind = t.formula = TailKind::geometric;
  t.c = c;
  t.a = r;
  t.anchor = t.active_from = start;
  return t;
}

Tail Tail::powerlaw(double c, double s, Index start) {
  if (!std::isfinite(c) || !std::isfinite(s)) {
    throw std::invalid_argument("powerlaw tail parameters must be finite");
  }
  if (!(s > 1.0)) {
    throw std::invalid_argument("powerlaw tail requires s > 1");
  }
  if (start < 1) throw std::invalid_argument("tail start is 1-based");
  if (c == 0.0) return zero();
  Tail t;
  t.kind = t.formula = TailKind::powerlaw;
  t.c = c;
  t.a = s;
  t.anchor = t.active_from = start;
  return t;
}

Tail Tail::masked(const Tail& inner, std::uint32_t block) {
  if (inner.is_zero()) return zero();
  if (inner.kind == TailKind::masked || inner.kind == TailKind::surrogate) {
    throw std::invalid_argument(
        "masked tail requires a plain geometric/powerlaw inner tail");
  }
  if (block < 1) throw std::invalid_argument("block numbers are 1-based");
  Tail t = inner;
  t.kind = TailKind::masked;
  t.block = block;
  return t;
}

Index tail_flat_start(const Tail& t) {
  switch (t.kind) {
    case TailKind::zero: return kNoTailStart;
    case TailKind::geometric:
    case TailKind::powerlaw: return t.active_from;
    case TailKind::masked:
      return kScheme.to_flat(t.block, t.active_from);
    case TailKind::surrogate:
      return native_boundary(t);
  }
  return kNoTailStart;
}

double tail_value(const Tail& t, Index n) {
  switch (t.kind) {
    case TailKind::zero: return 0.0;
    case TailKind::geometric:
    case TailKind::powerlaw:
      return n >= t.active_from ? formula_value(t, n) : 0.0;
    case TailKind::masked: {
      const auto [b, m] = kScheme.from_flat(n);
      if (b != t.block || m < t.active_from) return 0.0;
      return formula_value(t, m);
    }
    case TailKind::surrogate: {
      const Index src = kScheme.to_flat(t.block, n);
      return src >= t.active_from ? formula_value(t, src) : 0.0;
    }
  }
  return 0.0;
}

namespace {

// exp with an exponent-space pad: returns a certified upper bound of
// e^log_mass that keeps a real margin over the exact value, so deeper
// truncations nest strictly inside shallower ones.
double mass_from_log(double log_mass) {
  if (log_mass < -700.0) return 0x1.0p-1000;
  const double padded = log_mass + 1e-9 + 1e-12 * std::fabs(log_mass);
  return rounding::steps_up(std::exp(padded), 2);
}

double geometric_mass_beyond(double c, double r, Index anchor, Index first,
                             double p) {
  // sum_{n >= first} |c r^(n-anchor)|^p = |c|^p |r|^(p e) / (1 - |r|^p)
  const double ar = std::fabs(r);
  const auto e = static_cast<double>(static_cast<std::int64_t>(first) -
                                     static_cast<std::int64_t>(anchor));
  const double log_mass = p * (std::log(std::fabs(c)) + e * std::log(ar)) -
                          std::log1p(-std::pow(ar, p));
  return mass_from_log(log_mass);
}

double powerlaw_mass_beyond(double c, double s, Index first, double p) {
  // sum_{n >= first} |c|^p n^(-sp) <= |c|^p (first-1)^(1-sp) / (sp-1),
  // first >= 2; the first == 1 case adds the n = 1 term separately.
  const double sp = s * p;
  const double logc = p * std::log(std::fabs(c));
  if (first <= 1) {
    const double log_mass = logc + std::log(sp / (sp - 1.0));
    return mass_from_log(log_mass);
  }
  const double log_mass = logc +
                          (1.0 - sp) * std::log(static_cast<double>(first - 1)) -
                          std::log(sp - 1.0);
  return mass_from_log(log_mass);
}

double formula_mass_beyond(const Tail& t, double p, Index first_pos) {
  if (t.formula == TailKind::geometric) {
    return geometric_mass_beyond(t.c, t.a, t.anchor, first_pos, p);
  }
  return powerlaw_mass_beyond(t.c, t.a, first_pos, p);
}

}  // namespace

Interval tail_p_mass_beyond(const Tail& t, double p, Index depth) {
  switch (t.kind) {
    case TailKind::zero: return {0.0, 0.0};
    case TailKind::geometric:
    case TailKind::powerlaw: {
      const Index first = std::max(depth + 1, t.active_from);
      return {0.0, formula_mass_beyond(t, p, first)};
    }
    case TailKind::masked: {
      const Index first_pos = std::max(
          kScheme.first_pos_at_or_after(t.block, depth + 1), t.active_from);
      return {0.0, formula_mass_beyond(t, p, first_pos)};
    }
    case TailKind::surrogate: {
      // positions m > depth live at flat source indices >= to_flat(block,
      // depth+1); bound by the source mass beyond that point
      const Index src_first =
          std::max(kScheme.to_flat(t.block, depth + 1), t.active_from);
      return {0.0, formula_mass_beyond(t, p, src_first)};
    }
  }
  return {0.0, 0.0};
}

// --- SeqPoint construction ----------------------------------------------

SeqPoint make_point(std::span<const std::pair<Index, double>> explicit_coords,
                    Tail tail) {
  SeqPoint x;
  x.coords.assign(explicit_coords.begin(), explicit_coords.end());
  std::sort(x.coords.begin(), x.coords.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const Index tfs = tail_flat_start(tail);
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    const auto& [n, v] = x.coords[i];
    if (n < 1) throw std::invalid_argument("coordinate indices are 1-based");
    if (!std::isfinite(v)) {
      throw std::invalid_argument("coordinate values must be finite");
    }
    if (i + 1 < x.coords.size() && x.coords[i + 1].first == n) {
      throw std::invalid_argument("duplicate coordinate index");
    }
    if (n >= tfs) {
      throw std::invalid_argument(
          "explicit coordinate index collides with the tail");
    }
  }
  x.tail = tail;
  drop_zeros(x.coords);
  absorb(x);
  return x;
}

SeqPoint make_point(std::initializer_list<std::pair<Index, double>> coords,
                    Tail tail) {
  return make_point(std::span<const std::pair<Index, double>>(coords.begin(),
                                                              coords.size()),
                    tail);
}

SeqPoint zero_point() { return SeqPoint{}; }

SeqPoint unit_vector(Index n, double scale) {
  return make_point({{n, scale}}, Tail::zero());
}

double coord(const SeqPoint& x, Index n) {
  auto it = find_coord(x.coords, n);
  if (it != x.coords.end()) return it->second;
  return tail_value(x.tail, n);
}

Index max_explicit_index(const SeqPoint& x) {
  return x.coords.empty() ? 0 : x.coords.back().first;
}

bool finite_support(const SeqPoint& x) { return x.tail.is_zero(); }

std::vector<Index> support_upto(const SeqPoint& x, Index depth) {
  std::vector<Index> out;
  for (const auto& [n, v] : x.coords) {
    if (n > depth) break;
    out.push_back(n);
  }
  if (x.tail.is_zero()) return out;
  const Index b = native_boundary(x.tail);
  for (Index pos = b;; ++pos) {
    const Index idx = storage_index(x.tail, pos);
    if (idx > depth) break;
    if (value_at_position(x.tail, pos) == 0.0) break;  // decayed to zero
    out.push_back(idx);
  }
  // explicit entries all lie below the tail's flat start
  return out;
}

// --- overwrite ------------------------------------------------------------

SeqPoint overwrite_value(const SeqPoint& x, Index t, double v) {
  if (t < 1) throw std::invalid_argument("coordinate indices are 1-based");
  if (!std::isfinite(v)) {
    throw std::invalid_argument("coordinate values must be finite");
  }
  if (coord(x, t) == v) return x;

  SeqPoint y = x;
  const Index tfs = tail_flat_start(y.tail);
  if (t >= tfs) {
    // materialize tail positions up to t, then advance the boundary past it
    Index from = native_boundary(y.tail);
    Index upto;  // last native position whose storage index is <= t
    if (y.tail.kind == TailKind::masked) {
      upto = kScheme.count_upto(y.tail.block, t);
    } else {
      upto = t;
    }
    if (upto - from + 1 > kMaterializeCap) {
      throw UnrepresentableError(
          "overwrite would materialize too many tail coordinates");
    }
    for (Index pos = from; pos <= upto; ++pos) {
      const double val = value_at_position(y.tail, pos);
      if (val != 0.0) y.coords.emplace_back(storage_index(y.tail, pos), val);
    }
    set_boundary(y.tail, upto + 1);
    std::sort(y.coords.begin(), y.coords.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  auto it = std::lower_bound(
      y.coords.begin(), y.coords.end(), t,
      [](const std::pair<Index, double>& e, Index k) { return e.first < k; });
  if (it != y.coords.end() && it->first == t) {
    if (v == 0.0) {
      y.coords.erase(it);
    } else {
      it->second = v;
    }
  } else if (v != 0.0) {
    y.coords.insert(it, {t, v});
  }
  absorb(y);
  return y;
}

SeqPoint overwrite(const SeqPoint& x, Index t, const SeqPoint& a) {
  return overwrite_value(x, t, coord(a, t));
}

// --- sigma order ------------------------------------------------------------

namespace {

bool same_formula(const Tail& s, const Tail& t) {
  if (s.formula != t.formula) return false;
  if (s.a != t.a) return false;
  if (s.formula == TailKind::powerlaw) return s.c == t.c;
  if (s.anchor == t.anchor) return s.c == t.c;
  const auto k = static_cast<double>(static_cast<std::int64_t>(t.anchor) -
                                     static_cast<std::int64_t>(s.anchor));
  return s.c * std::pow(s.a, k) == t.c;
}

// Whether two tails define the same value function on their common active
// region. Distinct functions within this family disagree at infinitely many
// indices, which is what sigma_order needs. Cross-kind comparisons are
// conservatively "different".
bool same_tail_function(const Tail& s, const Tail& t) {
  if (s.kind != t.kind) return false;
  switch (s.kind) {
    case TailKind::zero: return true;
    case TailKind::geometric:
    case TailKind::powerlaw: return same_formula(s, t);
    case TailKind::masked:
    case TailKind::surrogate:
      return s.block == t.block && same_formula(s, t);
  }
  return false;
}

}  // namespace

SigmaOrder sigma_order(const SeqPoint& x, const SeqPoint& a) {
  const bool x_zero = x.tail.is_zero();
  const bool a_zero = a.tail.is_zero();
  if (!x_zero || !a_zero) {
    if (!same_tail_function(x.tail, a.tail)) return SigmaOrder::infinite();
  }
  // Beyond M both points follow the same active formula (or are both zero);
  // below it, compare coordinates over the union of supports.
  Index m = std::max(max_explicit_index(x), max_explicit_index(a));
  if (!x_zero) m = std::max(m, tail_flat_start(x.tail));
  if (!a_zero) m = std::max(m, tail_flat_start(a.tail));

  const std::vector<Index> sx = support_upto(x, m);
  const std::vector<Index> sa = support_upto(a, m);
  std::vector<Index> merged;
  merged.reserve(sx.size() + sa.size());
  std::merge(sx.begin(), sx.end(), sa.begin(), sa.end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  std::uint64_t count = 0;
  for (Index n : merged) {
    if (coord(x, n) != coord(a, n)) ++count;
  }
  return SigmaOrder::finite_of(count);
}

// --- projection ------------------------------------------------------------

SeqPoint project(const SeqPoint& x, std::uint32_t block,
                 const PartitionScheme& scheme) {
  if (block < 1) throw std::invalid_argument("block numbers are 1-based");
  SeqPoint y;
  for (const auto& [n, v] : x.coords) {
    const auto [b, m] = scheme.from_flat(n);
    if (b == block) y.coords.emplace_back(m, v);
  }
  switch (x.tail.kind) {
    case TailKind::zero:
      break;
    case TailKind::masked:
      if (x.tail.block == block) {
        Tail t = x.tail;
        t.kind = t.formula;
        t.block = 0;
        y.tail = t;
      }
      break;
    case TailKind::geometric:
    case TailKind::powerlaw: {
      Tail t = x.tail;
      t.kind = TailKind::surrogate;
      t.block = block;
      y.tail = t;
      break;
    }
    case TailKind::surrogate:
      throw UnrepresentableError(
          "cannot re-project a surrogate-tailed point in closed form");
  }
  absorb(y);
  return y;
}

// --- metrics ------------------------------------------------------------

namespace {

void check_norm_args(const SeqPoint& x, double p, Index depth) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("p must satisfy 1 <= p < infinity");
  }
  if (depth < 1) throw std::invalid_argument("depth must be positive");
  if (depth < max_explicit_index(x)) {
    throw std::invalid_argument("depth must cover all explicit coordinates");
  }
}

}  // namespace

Interval p_norm(const SeqPoint& x, double p, Index depth) {
  check_norm_args(x, p, depth);
  Interval sum{0.0, 0.0};
  for (Index n : support_upto(x, depth)) {
    sum = sum + pow_abs(coord(x, n), p);
  }
  sum = sum + tail_p_mass_beyond(x.tail, p, depth);
  return root(sum, p);
}

Interval dist_p(const SeqPoint& x, const SeqPoint& y, double p, Index depth) {
  check_norm_args(x, p, depth);
  check_norm_args(y, p, depth);
  if (x == y) return {0.0, 0.0};

  const std::vector<Index> sx = support_upto(x, depth);
  const std::vector<Index> sy = support_upto(y, depth);
  std::vector<Index> merged;
  merged.reserve(sx.size() + sy.size());
  std::merge(sx.begin(), sx.end(), sy.begin(), sy.end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  Interval sum{0.0, 0.0};
  for (Index n : merged) {
    const Interval diff = Interval(coord(x, n)) - Interval(coord(y, n));
    sum = sum + pow_abs(diff, p);
  }

  bool tails_cancel = same_tail_function(x.tail, y.tail);
  if (tails_cancel && !x.tail.is_zero()) {
    tails_cancel = x.tail.active_from == y.tail.active_from ||
                   (tail_flat_start(x.tail) <= depth &&
                    tail_flat_start(y.tail) <= depth);
  }
  if (!tails_cancel) {
    // sum_{n>depth} |x_n - y_n|^p <= 2^(p-1) (mass_x + mass_y) by convexity
    const Interval mx = tail_p_mass_beyond(x.tail, p, depth);
    const Interval my = tail_p_mass_beyond(y.tail, p, depth);
    const Interval factor = pow_abs(2.0, p - 1.0);
    sum = sum + Interval{0.0, (factor * (mx + my)).hi};
  }
  return root(sum, p);
}

Interval dist_trunc(const SeqPoint& x, const SeqPoint& y, double p,
                    Index depth) {
  return min(dist_p(x, y, p, depth), Interval{1.0, 1.0});
}

}  // namespace ssclab
