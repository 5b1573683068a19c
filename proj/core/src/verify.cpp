#include "ssclab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ssclab/errors.hpp"
#include "ssclab/rng.hpp"
#include "ssclab/sampling.hpp"

namespace ssclab {

TopologyMode TopologyMode::norm_p(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("p must satisfy 1 <= p < infinity");
  }
  return {Kind::norm, p};
}

ApproachSchedule ApproachSchedule::standard(std::uint64_t seed,
                                            ApproachStyle style, int j_max,
                                            int samples) {
  ApproachSchedule s;
  s.radii.reserve(static_cast<std::size_t>(j_max) + 1);
  for (int j = 0; j <= j_max; ++j) s.radii.push_back(std::ldexp(1.0, -j));
  s.samples_per_radius = samples;
  s.seed = seed;
  s.style = style;
  return s;
}

// --- sample generation -------------------------------------------------------

namespace {

int worker_count(std::size_t work_items) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SSC_LAB_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return static_cast<int>(std::min<std::size_t>(hw, std::max<std::size_t>(work_items, 1)));
}

Index sample_pool(const SeqPoint& a, Index t) {
  return std::max<Index>({16, t, max_explicit_index(a) + 1});
}

SeqPoint coordinate_perturb_sample(const SeqPoint& a, Index t, double radius,
                                   Rng& rng) {
  const Index c = 1 + rng.below(sample_pool(a, t));
  const double delta = radius * rng.uniform(-1.0, 1.0);
  return overwrite_value(a, c, coord(a, c) + delta);
}

SeqPoint random_direction_sample(const SeqPoint& a, Index t, double p,
                                 double radius, Rng& rng) {
  const Index pool = sample_pool(a, t);
  const int k = 1 + static_cast<int>(rng.below(5));
  std::vector<std::pair<Index, double>> dir;
  dir.reserve(static_cast<std::size_t>(k) + 1);
  if (rng.below(2) == 0) dir.emplace_back(t, rng.uniform(-1.0, 1.0));
  for (int i = 0; i < k; ++i) {
    const Index c = 1 + rng.below(pool);
    bool dup = false;
    for (const auto& [idx, _] : dir) {
      if (idx == c) { dup = true; break; }
    }
    if (!dup) dir.emplace_back(c, rng.uniform(-1.0, 1.0));
  }
  double mass = 0.0;
  for (const auto& [_, v] : dir) mass += std::pow(std::fabs(v), p);
  const double norm = std::pow(mass, 1.0 / p);
  if (norm == 0.0) return a;
  const double scale = radius * rng.uniform(0.05, 1.0) * 0.9 / norm;
  SeqPoint x = a;
  for (const auto& [idx, v] : dir) {
    x = overwrite_value(x, idx, coord(a, idx) + v * scale);
  }
  return x;
}

// The Example-4.1 escape pattern: a vanishing nudge at t plus a spike whose
// index and magnitude grow together, so every coordinate still converges.
SeqPoint pointwise_escape_sample(const SeqPoint& a, Index t, double radius,
                                 Index sample_idx) {
  const auto base = static_cast<Index>(std::ceil(1.0 / radius));
  const Index n = std::max<Index>(2, base) + sample_idx;
  const Index q = std::max<Index>({n, t + 1, max_explicit_index(a) + 1});
  SeqPoint x = overwrite_value(a, t, coord(a, t) + 1.0 / static_cast<double>(n));
  x = overwrite_value(x, q, coord(x, q) + static_cast<double>(n));
  return x;
}

SeqPoint make_sample(const SeqPoint& a, Index t, const TopologyMode& topo,
                     ApproachStyle style, double radius, Index sample_idx,
                     Rng& rng) {
  if (style == ApproachStyle::pointwise_escape) {
    if (topo.kind == TopologyMode::Kind::pointwise) {
      return pointwise_escape_sample(a, t, radius, sample_idx);
    }
    style = ApproachStyle::random_direction;  // escapes break the norm ball
  }
  if (style == ApproachStyle::coordinate_perturb) {
    return coordinate_perturb_sample(a, t, radius, rng);
  }
  return random_direction_sample(a, t, topo.p, radius, rng);
}

// --- the gap ladder ---------------------------------------------------------

struct RadiusOutcome {
  RadiusRow row;
  bool known = true;
  std::vector<SeqPoint> witnesses;  // samples with certified gap above tol
};

using GapFn = std::function<Evaluation(const SeqPoint&)>;
using CandidateFn = std::function<std::vector<SeqPoint>(double radius)>;

RadiusOutcome run_radius(const SeqPoint& a, Index t, const TopologyMode& topo,
                         const ApproachSchedule& sched, std::size_t radius_idx,
                         const GapFn& gap, const CandidateFn& candidates,
                         double tol) {
  const double radius = sched.radii[radius_idx];
  RadiusOutcome out;
  out.row.radius = radius;
  std::vector<SeqPoint> points;
  points.reserve(static_cast<std::size_t>(sched.samples_per_radius) + 2);
  for (int u = 0; u < sched.samples_per_radius; ++u) {
    Rng rng = Rng::derive(sched.seed, 0x5a3c, radius_idx,
                          static_cast<std::uint64_t>(u));
    points.push_back(make_sample(a, t, topo, sched.style, radius,
                                 static_cast<Index>(u), rng));
  }
  if (candidates) {
    for (SeqPoint& extra : candidates(radius)) points.push_back(std::move(extra));
  }
  Interval sup{0.0, 0.0};
  bool first = true;
  for (const SeqPoint& x : points) {
    const Evaluation g = gap(x);
    out.known = out.known && g.known;
    sup = first ? g.value : Interval{std::max(sup.lo, g.value.lo),
                                     std::max(sup.hi, g.value.hi)};
    first = false;
    if (g.known && g.value.lo > tol) out.witnesses.push_back(x);
  }
  out.row.sup_gap = first ? Interval{0.0, 0.0} : sup;
  out.row.n_samples = static_cast<int>(points.size());
  return out;
}

CheckReport run_gap_ladder(const SeqPoint& a, Index t,
                           const TopologyMode& topo,
                           const ApproachSchedule& sched, double tol,
                           const GapFn& gap, const CandidateFn& candidates,
                           const std::string& what) {
  if (sched.radii.empty()) {
    throw std::invalid_argument("schedule has no radii");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const std::size_t n = sched.radii.size();
  std::vector<RadiusOutcome> outcomes(n);
  const int workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t j = 0; j < n; ++j) {
      outcomes[j] = run_radius(a, t, topo, sched, j, gap, candidates, tol);
    }
  } else {
    std::vector<std::future<void>> futures;
    futures.reserve(static_cast<std::size_t>(workers));
    std::atomic<std::size_t> next{0};
    for (int w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&]() {
        for (;;) {
          const std::size_t j = next.fetch_add(1);
          if (j >= n) return;
          outcomes[j] = run_radius(a, t, topo, sched, j, gap, candidates, tol);
        }
      }));
    }
    for (auto& f : futures) f.get();
  }

  CheckReport report;
  report.per_radius.reserve(n);
  for (const RadiusOutcome& o : outcomes) report.per_radius.push_back(o.row);

  const std::size_t window = std::min<std::size_t>(5, n);
  bool all_known = true;
  bool true_streak = true;
  bool false_streak = true;
  for (std::size_t j = n - window; j < n; ++j) {
    all_known = all_known && outcomes[j].known;
    true_streak = true_streak && outcomes[j].known &&
                  outcomes[j].row.sup_gap.hi < tol;
    false_streak = false_streak && !outcomes[j].witnesses.empty();
  }

  std::ostringstream notes;
  if (false_streak) {
    for (std::size_t j = n - window; j < n; ++j) {
      if (!outcomes[j].witnesses.empty()) {
        report.witnesses.push_back(outcomes[j].witnesses.front());
      }
    }
    report.verdict = Verdict::no();
    notes << what << ": certified gap above tol=" << tol
          << " on each of the innermost " << window << " radii";
  } else if (true_streak) {
    report.verdict = Verdict::yes();
    notes << what << ": sup gap certified below tol=" << tol
          << " on the innermost " << window << " radii";
  } else {
    report.verdict = Verdict::unknown(
        all_known ? "sup gap between certification thresholds"
                  : "some evaluations could not be classified");
    notes << what << ": undecided";
  }
  report.notes = notes.str();
  return report;
}

// Constructive escape candidates from prescribed-discontinuity leaves.
// Witness support grows like (1/radius)^2, so only coarse rungs are tried.
CandidateFn region_candidates(const FuncExpr& f, const SeqPoint& center,
                              Index depth) {
  auto regions = collect_regions(f);
  if (regions.empty()) return nullptr;
  return [regions = std::move(regions), center, depth](double radius) {
    std::vector<SeqPoint> out;
    if (radius < 1.0 / 64.0) return out;
    for (const auto& [region, p] : regions) {
      if (!region.contains(center, depth).is_true()) continue;
      try {
        WitnessResult w = discontinuity_witness(region, p, center,
                                                radius, depth);
        if (auto* pt = std::get_if<SeqPoint>(&w)) out.push_back(std::move(*pt));
      } catch (const std::invalid_argument&) {
        // not certifiably interior; nothing to contribute
      }
    }
    return out;
  };
}

}  // namespace

CheckReport ssc_check(const FuncExpr& f, const SeqPoint& a, Index t,
                      const TopologyMode& topo, const ApproachSchedule& sched,
                      double tol, Index depth) {
  if (t < 1) throw std::invalid_argument("coordinate indices are 1-based");
  GapFn gap = [&f, &a, t, depth](const SeqPoint& x) {
    const Index d = std::max(depth, max_explicit_index(x));
    const Evaluation at_x = f.eval(x, d);
    const SeqPoint y = overwrite(x, t, a);
    const Evaluation at_y = f.eval(y, std::max(d, max_explicit_index(y)));
    return Evaluation{abs(at_x.value - at_y.value),
                      at_x.known && at_y.known};
  };
  return run_gap_ladder(a, t, topo, sched, tol, gap,
                        region_candidates(f, a, depth),
                        "ssc gap at coordinate " + std::to_string(t));
}

CheckReport continuity_check(const FuncExpr& f, const SeqPoint& x0,
                             const TopologyMode& topo,
                             const ApproachSchedule& sched, double tol,
                             Index depth) {
  const Evaluation at_x0 = f.eval(x0, std::max(depth, max_explicit_index(x0)));
  GapFn gap = [&f, at_x0, depth](const SeqPoint& x) {
    const Index d = std::max(depth, max_explicit_index(x));
    const Evaluation at_x = f.eval(x, d);
    return Evaluation{abs(at_x.value - at_x0.value),
                      at_x.known && at_x0.known};
  };
  return run_gap_ladder(x0, 1, topo, sched, tol, gap,
                        region_candidates(f, x0, depth), "continuity gap");
}

// --- discontinuity witness ----------------------------------------------------

namespace {

constexpr Index kWitnessSupportCap = Index{1} << 21;

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

WitnessResult discontinuity_witness(const RegionSpec& G, double p,
                                    const SeqPoint& x0, double delta,
                                    Index depth) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("delta must be positive");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("p must satisfy 1 <= p < infinity");
  }
  if (!G.contains(x0, depth).is_true()) {
    throw std::invalid_argument("x0 must be a certified member of the region");
  }
  const FuncExpr f = FuncExpr::prescribed_discontinuity(G, p);
  const Index d0 = std::max(depth, max_explicit_index(x0));
  const Interval f0 = f.eval(x0, d0).value;
  if (!(f0.lo > 0.0)) {
    throw std::invalid_argument("f(x0) must be certifiably positive");
  }

  // l1 mass the truncation must reach so that g(y) <= (f0 - eps) e^-margin
  const double threshold =
      rounding::steps_up(std::log(2.0 / f0.lo), 4) + 1e-6;

  // truncation start: beyond it, x0's remaining p-mass is under (0.48 delta)^p
  const double budget = 0.48 * delta;
  const double budget_mass = std::pow(budget, p);
  Index cut = std::max<Index>(d0, 2);
  while (tail_p_mass_beyond(x0.tail, p, cut).hi >= budget_mass) {
    cut *= 2;
    if (cut > kWitnessSupportCap) {
      return Infeasible{"the point's tail cannot be truncated within delta"};
    }
  }

  // l1 mass already present in the kept prefix
  Interval own{0.0, 0.0};
  for (Index n : support_upto(x0, cut)) {
    own = own + abs(Interval(coord(x0, n)));
  }
  const double needed = threshold - own.lo;

  Index block_lo = 0, block_hi = 0;
  double coeff = 0.0;
  if (needed > 0.0) {
    // sign-matched harmonic block h_n = sgn(x0_n) c / n over [N0, M]:
    // l_p mass c * Sp must stay under the budget while c * S1 crosses the
    // threshold. S1/Sp over [N, e^2 N] grows like N^((p-1)/p), which fixes
    // the analytic block start below; p = 1 gains nothing from N.
    const double rho_needed = needed / (0.9 * budget);
    Index n0 = cut + 1;
    if (p > 1.0) {
      const double exponent = p / (p - 1.0);
      const double base = rho_needed / (2.0 * std::pow(p - 1.0, 1.0 / p));
      const double n_est = std::pow(std::max(base, 1.0), exponent);
      if (n_est > static_cast<double>(kWitnessSupportCap)) {
        return Infeasible{"feasible block exceeds the support cap"};
      }
      n0 = std::max(n0, static_cast<Index>(n_est) + 2);
    } else if (rho_needed > 1.0) {
      return Infeasible{
          "p = 1: the l1 mass available within delta is below the threshold"};
    }

    Index m = std::max<Index>(n0 + 8, static_cast<Index>(
        std::ceil(static_cast<double>(n0) * 7.389)));  // e^2 window
    for (int attempt = 0;; ++attempt) {
      if (m - n0 > kWitnessSupportCap) {
        return Infeasible{"feasible block exceeds the support cap"};
      }
      Interval sp_mass{0.0, 0.0};
      Interval s1{0.0, 0.0};
      for (Index n = n0; n <= m; ++n) {
        const Interval inv = div(Interval{1.0, 1.0},
                                 Interval(static_cast<double>(n)));
        sp_mass = sp_mass + pow_abs(inv, p);
        s1 = s1 + inv;
      }
      const double sp = root(sp_mass, p).hi;
      coeff = 0.9 * budget / sp;
      if (coeff * s1.lo > needed * (1.0 + 1e-9) + 1e-12) {
        block_lo = n0;
        block_hi = m;
        break;
      }
      if (p == 1.0 || attempt >= 4) {
        return Infeasible{"no block satisfies both mass constraints"};
      }
      m *= 2;  // S1 keeps growing while Sp stays bounded (p > 1)
    }
  }

  // y = truncation of x0 (+ the block) at the end of the block
  const Index top = needed > 0.0 ? block_hi : cut;
  std::vector<std::pair<Index, double>> coords;
  for (Index n : support_upto(x0, top)) {
    coords.emplace_back(n, coord(x0, n));
  }
  if (needed > 0.0) {
    // merge the harmonic block into the kept coordinates, sign-matched
    std::size_t i = 0;
    for (Index n = block_lo; n <= block_hi; ++n) {
      while (i < coords.size() && coords[i].first < n) ++i;
      const double h = coeff / static_cast<double>(n);
      if (i < coords.size() && coords[i].first == n) {
        coords[i].second += sign_of(coords[i].second) * h;
      } else {
        coords.insert(coords.begin() + static_cast<std::ptrdiff_t>(i), {n, h});
      }
    }
  }
  SeqPoint y = make_point(std::span<const std::pair<Index, double>>(coords),
                          Tail::zero());

  // certify the three posted bounds on the constructed point
  const Index dy = std::max({d0, top, max_explicit_index(y)});
  const Interval dist = dist_p(x0, y, p, dy);
  if (!(dist.hi < delta)) {
    return Infeasible{"constructed point missed the distance budget"};
  }
  const Interval fy = f.eval(y, dy).value;
  const Interval gap = f0 - fy;
  if (!(gap.lo > f0.hi / 2.0 - 1e-9)) {
    return Infeasible{"constructed point missed the value gap"};
  }
  return y;
}

// --- modulus ------------------------------------------------------------------

double ssc_modulus(const RegionSpec& G, double p, const SeqPoint& x0, Index k,
                   double eps, Index depth) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (k < 1) throw std::invalid_argument("coordinate indices are 1-based");
  if (!G.contains(x0, depth).is_true()) {
    throw std::invalid_argument("x0 must be a certified member of the region");
  }
  (void)p;
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = std::numeric_limits<double>::infinity();
  if (G.kind() != RegionSpec::Kind::whole_space) {
    d1 = G.dist_to_complement(x0, std::max(depth, max_explicit_index(x0))).lo;
    if (!(d1 > 0.0)) {
      throw std::invalid_argument("x0 is not certifiably interior to G");
    }
    d2 = eps / 4.0;  // phi = min{d(., F), 1} is 1-Lipschitz
  }
  const double d3 = std::log1p(eps / 2.0);
  return std::min({d1, d2, d3});
}

// --- empirical Lipschitz ratio --------------------------------------------------

double lipschitz_ratio(const std::function<SeqPoint(const SeqPoint&)>& map,
                       int pairs, double p, std::uint64_t seed) {
  if (pairs < 1) throw std::invalid_argument("need at least one pair");
  double sup = 0.0;
  for (int i = 0; i < pairs; ++i) {
    Rng rng = Rng::derive(seed, 0x11b5, static_cast<std::uint64_t>(i));
    const SeqPoint x = random_decidable_point(rng);
    const SeqPoint y = random_decidable_point(rng);
    const Index d = std::max({kDefaultDepth, max_explicit_index(x),
                              max_explicit_index(y)});
    const Interval denom = dist_trunc(x, y, p, d);
    if (!(denom.lo > 0.0)) continue;
    const SeqPoint fx = map(x);
    const SeqPoint fy = map(y);
    const Index dd = std::max({d, max_explicit_index(fx),
                               max_explicit_index(fy)});
    const Interval num = dist_trunc(fx, fy, p, dd);
    sup = std::max(sup, num.hi / denom.lo);
  }
  return sup;
}

// --- super density ---------------------------------------------------------------

SeqPoint NearlyOpenBox::center() const {
  SeqPoint c = base;
  for (const Side& s : sides) {
    c = overwrite_value(c, s.coordinate, 0.5 * (s.lo + s.hi));
  }
  return c;
}

FalsifyResult superdensity_falsify(const SetOracle& E, const NearlyOpenBox& box,
                                   int budget, std::uint64_t seed) {
  for (const auto& s : box.sides) {
    if (!(s.lo < s.hi)) {
      throw std::invalid_argument("box sides must be nonempty open intervals");
    }
  }
  if (!E.membership) throw std::invalid_argument("oracle lacks membership");
  FalsifyResult result;
  if (budget <= 0) {
    result.note = "no search budget";
    return result;
  }

  // coordinate-separable certification: some constrained coordinate of the
  // box excludes every admissible value of E
  for (const auto& constraint : E.separable) {
    for (const auto& s : box.sides) {
      if (s.coordinate != constraint.coordinate) continue;
      bool any_inside = false;
      for (double v : constraint.allowed) {
        if (s.lo < v && v < s.hi) { any_inside = true; break; }
      }
      if (!any_inside) {
        result.outcome = FalsifyResult::Outcome::emptiness_certified;
        std::ostringstream note;
        note << "coordinate " << s.coordinate << " of every box point lies in ("
             << s.lo << ", " << s.hi
             << "), which excludes the oracle's admissible values";
        result.note = note.str();
        return result;
      }
    }
  }

  // budget-limited search: box center first, then random grid draws
  std::vector<SeqPoint> candidates;
  candidates.push_back(box.center());
  for (int i = 1; i < budget; ++i) {
    Rng rng = Rng::derive(seed, 0xb0c5, static_cast<std::uint64_t>(i));
    SeqPoint c = box.base;
    for (const auto& s : box.sides) {
      c = overwrite_value(c, s.coordinate, rng.uniform(s.lo, s.hi));
    }
    candidates.push_back(std::move(c));
  }
  for (SeqPoint& c : candidates) {
    if (E.membership(c).is_true()) {
      result.outcome = FalsifyResult::Outcome::member_found;
      result.member = std::move(c);
      result.note = "the box meets E; it does not falsify super density";
      return result;
    }
  }
  result.note = "search budget exhausted without a certificate";
  return result;
}

CheckReport determining_demo(const SetOracle& E, const NearlyOpenBox& box,
                             int samples, std::uint64_t seed) {
  const FalsifyResult falsified =
      superdensity_falsify(E, box, 64, Rng::derive(seed, 0xde70, 0).next());
  if (falsified.outcome != FalsifyResult::Outcome::emptiness_certified) {
    throw std::invalid_argument(
        "the box is not a certified falsifier for E; nothing to demonstrate");
  }

  std::vector<Bump> bumps;
  bumps.reserve(box.sides.size());
  for (const auto& s : box.sides) {
    bumps.push_back(Bump{s.coordinate, 0.5 * (s.lo + s.hi),
                         0.5 * (s.hi - s.lo)});
  }
  const FuncExpr f = FuncExpr::product_bump(bumps, box.base);
  const FuncExpr g = FuncExpr::constant(0.0);

  CheckReport report;
  std::ostringstream notes;
  notes << falsified.note << "; ";
  if (!E.sample_member) {
    report.verdict = Verdict::unknown("oracle provides no member sampler");
    notes << "cannot sample members of E";
    report.notes = notes.str();
    return report;
  }

  int agreed = 0;
  for (int i = 0; i < samples; ++i) {
    Rng rng = Rng::derive(seed, 0xde71, static_cast<std::uint64_t>(i));
    const SeqPoint e = E.sample_member(rng);
    const Evaluation fe = f.eval(e);
    const Evaluation ge = g.eval(e);
    if (fe.value == Interval{0.0, 0.0} && ge.value == Interval{0.0, 0.0}) {
      ++agreed;
    } else {
      report.witnesses.push_back(e);
    }
  }
  const Interval at_center = f.eval(box.center()).value;
  const bool separated = at_center.lo > 0.0;

  if (!report.witnesses.empty() || !separated) {
    report.verdict = Verdict::no();
    notes << "demonstration failed";
  } else {
    report.verdict = Verdict::yes();
    if (samples == 0) {
      notes << "vacuous pass: no samples requested; ";
    }
    notes << "f = g = 0 on " << agreed << " sampled members of E while f("
          << "box center) >= " << at_center.lo
          << " > 0: E does not determine the class";
  }
  report.notes = notes.str();
  return report;
}

}  // namespace ssclab
