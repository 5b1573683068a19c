#pragma once

#include <string>

#include "json.hpp"
#include "ssclab/borel.hpp"
#include "ssclab/funcexpr.hpp"
#include "ssclab/report.hpp"
#include "ssclab/verify.hpp"

namespace ssclab {

using json = nlohmann::json;

// Points round-trip bit-exactly (doubles as shortest round-trip decimals).
json to_json(const SeqPoint& x);
SeqPoint seqpoint_from_json(const json& j);

json to_json(const Tail& t);
Tail tail_from_json(const json& j);

json to_json(const Interval& v);
json to_json(const ClassIndex& c);
ClassIndex class_index_from_json(const json& j);
json to_json(const PartitionScheme& scheme);
PartitionScheme partition_scheme_from_json(const json& j);

json to_json(const NearlyOpenBox& box);
NearlyOpenBox box_from_json(const json& j);

/// Serializable expression trees: every leaf and combinator except
/// general-term series and oracle regions. Throws std::invalid_argument on
/// non-serializable nodes.
json to_json(const FuncExpr& f);
FuncExpr funcexpr_from_json(const json& j);

json to_json(const RegionSpec& region);
RegionSpec region_from_json(const json& j);

json to_json(const Verdict& v);
json to_json(const CheckReport& report);

/// CSV with header: radius,sup_gap_lo,sup_gap_hi,n_samples
std::string report_to_csv(const CheckReport& report);
std::string report_to_json_string(const CheckReport& report);

}  // namespace ssclab
