#include "ssclab/serialize.hpp"

#include <sstream>
#include <stdexcept>

namespace ssclab {

namespace {

using Node = FuncExpr::Node;
using Kind = FuncExpr::Node::Kind;

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

json to_json(const Tail& t) {
  switch (t.kind) {
    case TailKind::zero:
      return json{{"kind", "zero"}};
    case TailKind::geometric: {
      json j{{"kind", "geometric"}, {"c", t.c}, {"r", t.a},
             {"start", t.active_from}};
      if (t.anchor != t.active_from) j["anchor"] = t.anchor;
      return j;
    }
    case TailKind::powerlaw: {
      json j{{"kind", "powerlaw"}, {"c", t.c}, {"s", t.a},
             {"start", t.active_from}};
      if (t.anchor != t.active_from) j["anchor"] = t.anchor;
      return j;
    }
    case TailKind::masked: {
      Tail inner = t;
      inner.kind = t.formula;
      inner.block = 0;
      return json{{"kind", "masked"}, {"inner", to_json(inner)},
                  {"block", t.block}};
    }
    case TailKind::surrogate:
      throw std::invalid_argument(
          "surrogate tails are runtime-only and do not serialize");
  }
  throw std::logic_error("unreachable tail kind");
}

Tail tail_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return Tail::zero();
  if (kind == "geometric" || kind == "powerlaw") {
    const double c = j.at("c").get<double>();
    const Index start = j.at("start").get<Index>();
    Tail t = kind == "geometric"
                 ? Tail::geometric(c, j.at("r").get<double>(), start)
                 : Tail::powerlaw(c, j.at("s").get<double>(), start);
    if (j.contains("anchor") && !t.is_zero()) {
      t.anchor = j.at("anchor").get<Index>();
    }
    return t;
  }
  if (kind == "masked") {
    return Tail::masked(tail_from_json(j.at("inner")),
                        j.at("block").get<std::uint32_t>());
  }
  throw std::invalid_argument("unknown tail kind: " + kind);
}

json to_json(const SeqPoint& x) {
  json coords = json::array();
  for (const auto& [n, v] : x.coords) coords.push_back(json::array({n, v}));
  return json{{"explicit", std::move(coords)}, {"tail", to_json(x.tail)}};
}

SeqPoint seqpoint_from_json(const json& j) {
  std::vector<std::pair<Index, double>> coords;
  for (const auto& e : j.at("explicit")) {
    coords.emplace_back(e.at(0).get<Index>(), e.at(1).get<double>());
  }
  return make_point(std::span<const std::pair<Index, double>>(coords),
                    tail_from_json(j.at("tail")));
}

json to_json(const Interval& v) { return json::array({v.lo, v.hi}); }

json to_json(const ClassIndex& c) {
  return json{{"alpha", c.alpha},
              {"kind", c.kind == ClassIndex::Kind::additive ? "A" : "B"}};
}

ClassIndex class_index_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const auto alpha = j.at("alpha").get<std::uint32_t>();
  if (kind == "A") return ClassIndex::additive(alpha);
  if (kind == "B") return ClassIndex::multiplicative(alpha);
  throw std::invalid_argument("class kind must be \"A\" or \"B\"");
}

json to_json(const PartitionScheme&) {
  return json{{"kind", "dyadic-default"}};
}

PartitionScheme partition_scheme_from_json(const json& j) {
  if (j.at("kind").get<std::string>() != "dyadic-default") {
    throw std::invalid_argument("unknown partition scheme");
  }
  return default_scheme();
}

json to_json(const NearlyOpenBox& box) {
  json sides = json::array();
  for (const auto& s : box.sides) {
    sides.push_back(json::array({s.coordinate, s.lo, s.hi}));
  }
  return json{{"base", to_json(box.base)}, {"sides", std::move(sides)}};
}

NearlyOpenBox box_from_json(const json& j) {
  NearlyOpenBox box;
  box.base = seqpoint_from_json(j.at("base"));
  for (const auto& e : j.at("sides")) {
    box.sides.push_back(NearlyOpenBox::Side{e.at(0).get<Index>(),
                                            e.at(1).get<double>(),
                                            e.at(2).get<double>()});
  }
  return box;
}

json to_json(const RegionSpec& region) {
  switch (region.kind()) {
    case RegionSpec::Kind::whole_space:
      return json{{"kind", "whole_space"}};
    case RegionSpec::Kind::ball:
      return json{{"kind", "ball"},
                  {"center", to_json(region.center())},
                  {"radius", region.radius()},
                  {"p", region.p()}};
    case RegionSpec::Kind::oracle:
      throw std::invalid_argument("oracle regions do not serialize");
  }
  throw std::logic_error("unreachable region kind");
}

RegionSpec region_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "whole_space") return RegionSpec::whole_space();
  if (kind == "ball") {
    return RegionSpec::ball(seqpoint_from_json(j.at("center")),
                            j.at("radius").get<double>(),
                            j.at("p").get<double>());
  }
  throw std::invalid_argument("unknown region kind: " + kind);
}

namespace {

json node_to_json(const Node& n) {
  switch (n.kind) {
    case Kind::constant:
      return json{{"kind", "const"}, {"value", n.value}};
    case Kind::chi_class:
      return json{{"kind", "chi_class"}, {"class", to_json(n.cls)},
                  {"scheme", to_json(n.scheme)}};
    case Kind::phi_g:
      return json{{"kind", "phi_g"}, {"region", to_json(n.region)},
                  {"p", n.p}};
    case Kind::example41:
      return json{{"kind", "example41"}};
    case Kind::product_bump: {
      json bumps = json::array();
      for (const Bump& b : n.bumps) {
        bumps.push_back(json::array({b.coordinate, b.center, b.halfwidth}));
      }
      return json{{"kind", "product_bump"}, {"bumps", std::move(bumps)},
                  {"base", to_json(n.base)}};
    }
    case Kind::abs:
      return json{{"kind", "abs"}, {"arg", node_to_json(*n.lhs)}};
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::min:
    case Kind::max: {
      const char* name = n.kind == Kind::add   ? "add"
                         : n.kind == Kind::sub ? "sub"
                         : n.kind == Kind::mul ? "mul"
                         : n.kind == Kind::min ? "min"
                                               : "max";
      return json{{"kind", name}, {"lhs", node_to_json(*n.lhs)},
                  {"rhs", node_to_json(*n.rhs)}};
    }
    case Kind::series_geometric:
      return json{{"kind", "uniform_series"}, {"ratio", n.ratio},
                  {"base", node_to_json(*n.lhs)}};
    case Kind::series_general:
      throw std::invalid_argument(
          "general-term series carry closures and do not serialize");
  }
  throw std::logic_error("unreachable node kind");
}

}  // namespace

json to_json(const FuncExpr& f) {
  if (!f.valid()) throw std::invalid_argument("empty expression");
  return node_to_json(*f.node());
}

FuncExpr funcexpr_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "const") return FuncExpr::constant(j.at("value").get<double>());
  if (kind == "chi_class") {
    return FuncExpr::chi_class(class_index_from_json(j.at("class")),
                               j.contains("scheme")
                                   ? partition_scheme_from_json(j.at("scheme"))
                                   : default_scheme());
  }
  if (kind == "phi_g") {
    return FuncExpr::prescribed_discontinuity(region_from_json(j.at("region")),
                                              j.at("p").get<double>());
  }
  if (kind == "example41") return FuncExpr::example41();
  if (kind == "product_bump") {
    std::vector<Bump> bumps;
    for (const auto& e : j.at("bumps")) {
      bumps.push_back(Bump{e.at(0).get<Index>(), e.at(1).get<double>(),
                           e.at(2).get<double>()});
    }
    return FuncExpr::product_bump(std::move(bumps),
                                  seqpoint_from_json(j.at("base")));
  }
  if (kind == "abs") return abs_of(funcexpr_from_json(j.at("arg")));
  if (kind == "add" || kind == "sub" || kind == "mul" || kind == "min" ||
      kind == "max") {
    FuncExpr lhs = funcexpr_from_json(j.at("lhs"));
    FuncExpr rhs = funcexpr_from_json(j.at("rhs"));
    if (kind == "add") return add(std::move(lhs), std::move(rhs));
    if (kind == "sub") return sub(std::move(lhs), std::move(rhs));
    if (kind == "mul") return mul(std::move(lhs), std::move(rhs));
    if (kind == "min") return min_of(std::move(lhs), std::move(rhs));
    return max_of(std::move(lhs), std::move(rhs));
  }
  if (kind == "uniform_series") {
    return FuncExpr::uniform_series_geometric(
        j.at("ratio").get<double>(), funcexpr_from_json(j.at("base")));
  }
  throw std::invalid_argument("unknown expression kind: " + kind);
}

json to_json(const Verdict& v) {
  json j{{"truth", to_string(v.truth)}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

json to_json(const CheckReport& report) {
  json rows = json::array();
  for (const RadiusRow& r : report.per_radius) {
    rows.push_back(json{{"radius", r.radius},
                        {"sup_gap", to_json(r.sup_gap)},
                        {"n_samples", r.n_samples}});
  }
  json witnesses = json::array();
  for (const SeqPoint& w : report.witnesses) witnesses.push_back(to_json(w));
  return json{{"verdict", to_json(report.verdict)},
              {"per_radius", std::move(rows)},
              {"witnesses", std::move(witnesses)},
              {"notes", report.notes}};
}

std::string report_to_csv(const CheckReport& report) {
  std::ostringstream os;
  os << "radius,sup_gap_lo,sup_gap_hi,n_samples\n";
  for (const RadiusRow& r : report.per_radius) {
    os << format_double(r.radius) << "," << format_double(r.sup_gap.lo) << ","
       << format_double(r.sup_gap.hi) << "," << r.n_samples << "\n";
  }
  return os.str();
}

std::string report_to_json_string(const CheckReport& report) {
  return to_json(report).dump(2) + "\n";
}

}  // namespace ssclab
