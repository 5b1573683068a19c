#pragma once

#include <string>
#include <vector>

#include "ssclab/interval.hpp"
#include "ssclab/seqpoint.hpp"
#include "ssclab/verdict.hpp"

namespace ssclab {

/// Per-radius summary of a checker run.
struct RadiusRow {
  double radius = 0.0;
  Interval sup_gap{0.0, 0.0};  // sup over samples, as an enclosure
  int n_samples = 0;

  bool operator==(const RadiusRow&) const = default;
};

/// Outcome of a numerical check: three-valued verdict, the observed
/// deviations per radius, and any certified counterexamples.
struct CheckReport {
  Verdict verdict;
  std::vector<RadiusRow> per_radius;
  std::vector<SeqPoint> witnesses;
  std::string notes;

  bool passed() const { return verdict.is_true(); }
};

}  // namespace ssclab
