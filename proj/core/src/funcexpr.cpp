#include "ssclab/funcexpr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ssclab/errors.hpp"

namespace ssclab {

// --- RegionSpec ------------------------------------------------------------

RegionSpec RegionSpec::ball(SeqPoint center, double radius, double p) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("ball radius must be finite and positive");
  }
  RegionSpec r;
  r.kind_ = Kind::ball;
  r.center_ = std::move(center);
  r.radius_ = radius;
  r.p_ = p;
  return r;
}

RegionSpec RegionSpec::whole_space() {
  RegionSpec r;
  r.kind_ = Kind::whole_space;
  return r;
}

RegionSpec RegionSpec::oracle(
    std::function<Interval(const SeqPoint&, Index)> dist_to_complement,
    std::function<Verdict(const SeqPoint&)> member) {
  RegionSpec r;
  r.kind_ = Kind::oracle;
  r.dist_ = std::move(dist_to_complement);
  r.member_ = std::move(member);
  return r;
}

Verdict RegionSpec::contains(const SeqPoint& x, Index depth) const {
  switch (kind_) {
    case Kind::whole_space:
      return Verdict::yes();
    case Kind::ball: {
      const Index d = std::max({depth, max_explicit_index(x),
                                max_explicit_index(center_)});
      const Interval dist = dist_p(x, center_, p_, d);
      if (dist.hi < radius_) return Verdict::yes();
      if (dist.lo >= radius_) return Verdict::no();
      return Verdict::unknown("distance enclosure straddles the boundary");
    }
    case Kind::oracle:
      return member_(x);
  }
  return Verdict::unknown("unreachable");
}

Interval RegionSpec::dist_to_complement(const SeqPoint& x, Index depth) const {
  switch (kind_) {
    case Kind::whole_space:
      // empty complement: callers cap at 1 through the truncated metric
      return {1.0, 1.0};
    case Kind::ball: {
      const Index d = std::max({depth, max_explicit_index(x),
                                max_explicit_index(center_)});
      const Interval dist = dist_p(x, center_, p_, d);
      return max(Interval{0.0, 0.0},
                 Interval{radius_, radius_} - dist);
    }
    case Kind::oracle:
      return max(Interval{0.0, 0.0}, dist_(x, depth));
  }
  return {0.0, 0.0};
}

// --- family distance -------------------------------------------------------

Interval dist_to_family(const PointFamily& family, const SeqPoint& x, double p,
                        Index depth) {
  const Index xd = std::max(depth, max_explicit_index(x));
  const Interval xnorm = p_norm(x, p, xd);

  auto member_dist = [&](Index n) {
    const SeqPoint y = family.generator(n);
    const Index d = std::max(xd, max_explicit_index(y));
    return dist_p(x, y, p, d);
  };

  Index start = 1;
  if (xnorm.hi > 1.0) {
    start = static_cast<Index>(std::llround(xnorm.hi));
  }
  Interval best = member_dist(start);

  constexpr Index kScanCap = Index{1} << 24;
  bool down_done = (start == 1);
  bool up_done = false;
  Index lo = start;
  Index hi = start;
  while (!down_done || !up_done) {
    if (!up_done) {
      ++hi;
      if (hi - start > kScanCap) {
        throw std::runtime_error("family scan exceeded the safety cap");
      }
      // members beyond: d(x, y_n) >= gamma(n) - ||x|| > best
      if (family.growth_bound(hi) - xnorm.hi > best.hi) {
        up_done = true;
      } else {
        best = min(best, member_dist(hi));
      }
    }
    if (!down_done) {
      if (lo == 1) {
        down_done = true;
      } else {
        --lo;
        // members below: d(x, y_n) >= ||x|| - ||y_n|| > best (norm_upper
        // is monotone increasing, so the whole low range is pruned at once)
        if (family.norm_upper &&
            xnorm.lo - family.norm_upper(lo) > best.hi) {
          down_done = true;
        } else {
          best = min(best, member_dist(lo));
        }
      }
    }
  }
  return best;
}

// --- Example 4.1 families ----------------------------------------------------

SeqPoint example41_x(Index n) {
  if (n < 1) throw std::invalid_argument("family index is 1-based");
  if (n == 1) return make_point({{1, 1.0}, {2, 1.0}});
  return make_point({{1, 1.0 / static_cast<double>(n)},
                     {n, static_cast<double>(n)}});
}

SeqPoint example41_y(Index n) {
  if (n < 1) throw std::invalid_argument("family index is 1-based");
  return make_point({{n, static_cast<double>(n)}});
}

PointFamily example41_family_x() {
  PointFamily f;
  f.generator = [](Index n) { return example41_x(n); };
  f.growth_bound = [](Index n) { return static_cast<double>(n) - 1.0; };
  f.norm_upper = [](Index n) { return static_cast<double>(n) + 1.0; };
  return f;
}

PointFamily example41_family_y() {
  PointFamily f;
  f.generator = [](Index n) { return example41_y(n); };
  f.growth_bound = [](Index n) { return static_cast<double>(n) - 1.0; };
  f.norm_upper = [](Index n) { return static_cast<double>(n); };
  return f;
}

// --- expression nodes -------------------------------------------------------

namespace {

using Node = FuncExpr::Node;
using Kind = FuncExpr::Node::Kind;

std::shared_ptr<Node> new_node(Kind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

Evaluation eval_node(const Node& node, const SeqPoint& x, Index depth);

Evaluation eval_binary(const Node& node, const SeqPoint& x, Index depth) {
  const Evaluation a = eval_node(*node.lhs, x, depth);
  const Evaluation b = eval_node(*node.rhs, x, depth);
  Evaluation out;
  out.known = a.known && b.known;
  switch (node.kind) {
    case Kind::add: out.value = a.value + b.value; break;
    case Kind::sub: out.value = a.value - b.value; break;
    case Kind::mul: out.value = a.value * b.value; break;
    case Kind::min: out.value = min(a.value, b.value); break;
    case Kind::max: out.value = max(a.value, b.value); break;
    default: throw std::logic_error("not a binary node");
  }
  return out;
}

Evaluation eval_phi_g(const Node& node, const SeqPoint& x, Index depth) {
  // phi = min{d(x, complement), 1}
  Interval phi{1.0, 1.0};
  if (node.region.kind() != RegionSpec::Kind::whole_space) {
    phi = min(node.region.dist_to_complement(x, depth), Interval{1.0, 1.0});
  }
  // g = exp(-sum |x_n|) on finite-support points, 1 off the sigma-product
  Interval g{1.0, 1.0};
  if (finite_support(x)) {
    Interval l1{0.0, 0.0};
    for (const auto& [n, v] : x.coords) l1 = l1 + abs(Interval(v));
    g = exp(-l1);
  }
  return {phi * g, true};
}

Evaluation eval_example41(const SeqPoint& x, Index depth) {
  const Interval d1 = dist_to_family(example41_family_x(), x, 2.0, depth);
  if (d1 == Interval{0.0, 0.0}) return {Interval{0.0, 0.0}, true};
  const Interval d2 = dist_to_family(example41_family_y(), x, 2.0, depth);
  if (d2 == Interval{0.0, 0.0}) {
    if (d1.lo > 0.0) return {Interval{1.0, 1.0}, true};
    throw DegenerateDenominatorError(
        "both family distances vanish at the evaluation point");
  }
  return {div(d1, d1 + d2), true};
}

Evaluation eval_product_bump(const Node& node, const SeqPoint& x,
                             Index /*depth*/) {
  Interval out{1.0, 1.0};
  for (const Bump& b : node.bumps) {
    const Interval v(coord(x, b.coordinate));
    const Interval arg =
        div(abs(v - Interval(b.center)), Interval(b.halfwidth));
    const Interval hat = max(Interval{0.0, 0.0}, Interval{1.0, 1.0} - arg);
    out = out * hat;
    if (out == Interval{0.0, 0.0}) break;
  }
  return {out, true};
}

Evaluation eval_series_geometric(const Node& node, const SeqPoint& x,
                                 Index depth) {
  const Evaluation base = eval_node(*node.lhs, x, depth);
  const double q = node.ratio;
  const int n_terms = static_cast<int>(std::min<Index>(depth, 48));
  // sum_{n=1..N} q^n exactly via intervals, remainder q^(N+1)/(1-q)
  Interval weight{0.0, 0.0};
  Interval qpow{1.0, 1.0};
  const Interval iq{q, q};
  for (int n = 1; n <= n_terms; ++n) {
    qpow = qpow * iq;
    weight = weight + qpow;
  }
  const Interval rem = div(qpow * iq, Interval{1.0, 1.0} - iq);
  const double r = rem.hi * 1.5;  // margin keeps depth-nesting strict
  const Interval total = weight + Interval{-r, r};
  return {base.value * total, base.known};
}

Evaluation eval_series_general(const Node& node, const SeqPoint& x,
                               Index depth) {
  const double slack =
      std::ldexp(1.0, -static_cast<int>(std::min<Index>(depth, 48)));
  constexpr int kMaxTerms = 4096;
  int n_terms = 1;
  while (n_terms < kMaxTerms && node.bounds.tail_sum(n_terms) >= slack) {
    ++n_terms;
  }
  Evaluation out;
  Interval sum{0.0, 0.0};
  for (int n = 1; n <= n_terms; ++n) {
    const Evaluation term = eval_node(*node.terms(n).node(), x, depth);
    out.known = out.known && term.known;
    sum = sum + term.value;
  }
  const double t = node.bounds.tail_sum(n_terms) * 1.5;
  out.value = sum + Interval{-t, t};
  return out;
}

Evaluation eval_node(const Node& node, const SeqPoint& x, Index depth) {
  switch (node.kind) {
    case Kind::constant:
      return {Interval{node.value, node.value}, true};
    case Kind::chi_class: {
      const Verdict v = class_membership(x, node.cls, node.scheme);
      if (v.is_true()) return {Interval{1.0, 1.0}, true};
      if (v.is_false()) return {Interval{0.0, 0.0}, true};
      return {Interval{0.0, 1.0}, false};
    }
    case Kind::phi_g:
      return eval_phi_g(node, x, depth);
    case Kind::example41:
      return eval_example41(x, depth);
    case Kind::product_bump:
      return eval_product_bump(node, x, depth);
    case Kind::abs: {
      const Evaluation a = eval_node(*node.lhs, x, depth);
      return {abs(a.value), a.known};
    }
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::min:
    case Kind::max:
      return eval_binary(node, x, depth);
    case Kind::series_geometric:
      return eval_series_geometric(node, x, depth);
    case Kind::series_general:
      return eval_series_general(node, x, depth);
  }
  throw std::logic_error("unreachable expression kind");
}

}  // namespace

// --- FuncExpr factories -----------------------------------------------------

FuncExpr FuncExpr::constant(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("constant must be finite");
  auto n = new_node(Kind::constant);
  n->value = c;
  return FuncExpr::wrap(n);
}

FuncExpr FuncExpr::chi_class(ClassIndex c, PartitionScheme scheme) {
  auto n = new_node(Kind::chi_class);
  n->cls = c;
  n->scheme = scheme;
  return FuncExpr::wrap(n);
}

FuncExpr FuncExpr::prescribed_discontinuity(RegionSpec region, double p) {
  auto n = new_node(Kind::phi_g);
  n->region = std::move(region);
  n->p = p;
  return FuncExpr::wrap(n);
}

FuncExpr FuncExpr::example41() { return FuncExpr::wrap(new_node(Kind::example41)); }

FuncExpr FuncExpr::product_bump(std::vector<Bump> bumps, SeqPoint base) {
  for (const Bump& b : bumps) {
    if (!(b.halfwidth > 0.0) || !std::isfinite(b.halfwidth)) {
      throw std::invalid_argument("bump halfwidth must be positive");
    }
    if (b.coordinate < 1) {
      throw std::invalid_argument("bump coordinates are 1-based");
    }
  }
  auto n = new_node(Kind::product_bump);
  n->bumps = std::move(bumps);
  n->base = std::move(base);
  return FuncExpr::wrap(n);
}

FuncExpr FuncExpr::uniform_series(std::function<FuncExpr(int)> terms,
                                  SummableBounds bounds) {
  if (!terms || !bounds.at || !bounds.tail_sum) {
    throw std::invalid_argument("uniform_series needs terms and bounds");
  }
  auto n = new_node(Kind::series_general);
  n->terms = std::move(terms);
  n->bounds = std::move(bounds);
  return FuncExpr::wrap(n);
}

FuncExpr FuncExpr::uniform_series_geometric(double ratio, FuncExpr base) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("series ratio must lie in (0, 1)");
  }
  if (!base.valid()) throw std::invalid_argument("series base is empty");
  auto n = new_node(Kind::series_geometric);
  n->ratio = ratio;
  n->lhs = base.node_;
  return FuncExpr::wrap(n);
}

namespace {

std::shared_ptr<Node> binary_node(Kind k, const FuncExpr& lhs,
                                  const FuncExpr& rhs) {
  if (!lhs.valid() || !rhs.valid()) {
    throw std::invalid_argument("combinator over an empty expression");
  }
  auto n = new_node(k);
  return n;
}

}  // namespace

FuncExpr add(FuncExpr lhs, FuncExpr rhs) {
  auto n = binary_node(Kind::add, lhs, rhs);
  n->lhs = lhs.node_;
  n->rhs = rhs.node_;
  return FuncExpr::wrap(n);
}

FuncExpr sub(FuncExpr lhs, FuncExpr rhs) {
  auto n = binary_node(Kind::sub, lhs, rhs);
  n->lhs = lhs.node_;
  n->rhs = rhs.node_;
  return FuncExpr::wrap(n);
}

FuncExpr mul(FuncExpr lhs, FuncExpr rhs) {
  auto n = binary_node(Kind::mul, lhs, rhs);
  n->lhs = lhs.node_;
  n->rhs = rhs.node_;
  return FuncExpr::wrap(n);
}

FuncExpr min_of(FuncExpr lhs, FuncExpr rhs) {
  auto n = binary_node(Kind::min, lhs, rhs);
  n->lhs = lhs.node_;
  n->rhs = rhs.node_;
  return FuncExpr::wrap(n);
}

FuncExpr max_of(FuncExpr lhs, FuncExpr rhs) {
  auto n = binary_node(Kind::max, lhs, rhs);
  n->lhs = lhs.node_;
  n->rhs = rhs.node_;
  return FuncExpr::wrap(n);
}

FuncExpr abs_of(FuncExpr arg) {
  if (!arg.valid()) {
    throw std::invalid_argument("combinator over an empty expression");
  }
  auto n = new_node(Kind::abs);
  n->lhs = arg.node_;
  return FuncExpr::wrap(n);
}

Evaluation FuncExpr::eval(const SeqPoint& x, Index depth) const {
  if (!node_) throw std::invalid_argument("evaluating an empty expression");
  if (depth < 1) throw std::invalid_argument("depth must be positive");
  return eval_node(*node_, x, depth);
}

std::vector<std::pair<RegionSpec, double>> collect_regions(const FuncExpr& f) {
  std::vector<std::pair<RegionSpec, double>> out;
  if (!f.valid()) return out;
  std::vector<const Node*> stack{f.node()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n == nullptr) continue;
    if (n->kind == Kind::phi_g) out.emplace_back(n->region, n->p);
    stack.push_back(n->lhs.get());
    stack.push_back(n->rhs.get());
  }
  return out;
}

// --- finite sections ----------------------------------------------------------

FiniteSection::FiniteSection(FuncExpr f, SeqPoint a, std::vector<Index> t0)
    : f_(std::move(f)), a_(std::move(a)), t0_(std::move(t0)) {
  if (!f_.valid()) throw std::invalid_argument("empty expression");
  for (Index t : t0_) {
    if (t < 1) throw std::invalid_argument("coordinates are 1-based");
  }
}

Evaluation FiniteSection::operator()(std::span<const double> values,
                                     Index depth) const {
  if (values.size() != t0_.size()) {
    throw std::invalid_argument("section arity mismatch");
  }
  SeqPoint x = a_;
  for (std::size_t i = 0; i < t0_.size(); ++i) {
    x = overwrite_value(x, t0_[i], values[i]);
  }
  return f_.eval(x, depth);
}

FiniteSection finite_section(FuncExpr f, SeqPoint a, std::vector<Index> t0) {
  return FiniteSection(std::move(f), std::move(a), std::move(t0));
}

}  // namespace ssclab
