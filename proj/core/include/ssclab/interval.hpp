#pragma once

#include <string>

namespace ssclab {

/// Closed interval [lo, hi] of doubles certifying a real value.
///
/// Every operation returns an enclosure of the exact real result. Directed
/// rounding is recovered from error-free transformations (two-sum and FMA
/// residuals), so arithmetic that is exact in double precision stays exact:
/// the 2-norm of (3,4) evaluates to [5,5], indicator values stay {0,1}.
/// Transcendental endpoints (exp, pow with non-integer exponent) are widened
/// by a few ulps instead.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double v) : lo(v), hi(v) {}  // NOLINT: implicit by design
  Interval(double lo_, double hi_);

  double width() const { return hi - lo; }
  double mid() const;
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool encloses(const Interval& inner) const {
    return lo <= inner.lo && inner.hi <= hi;
  }
  std::string str() const;

  bool operator==(const Interval&) const = default;
};

Interval operator+(Interval a, Interval b);
Interval operator-(Interval a, Interval b);
Interval operator-(Interval a);
Interval operator*(Interval a, Interval b);

/// a / b. Throws DegenerateDenominatorError when 0 lies in b.
Interval div(Interval a, Interval b);

Interval abs(Interval a);
Interval min(Interval a, Interval b);
Interval max(Interval a, Interval b);
Interval hull(Interval a, Interval b);
Interval sqrt(Interval a);  // requires a.lo >= 0
Interval exp(Interval a);

/// |v|^p for p >= 1. Exact at p = 1 and (via the FMA residual) p = 2.
Interval pow_abs(double v, double p);
/// |a|^p over an interval.
Interval pow_abs(Interval a, double p);
/// a^(1/p) for a.lo >= 0, p >= 1. Exact-rounding path at p = 1, 2.
Interval root(Interval a, double p);

/// Directed-rounding scalar primitives (exposed for the kernel tests).
namespace rounding {
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);
/// x moved n ulps toward -inf / +inf.
double steps_down(double x, int n);
double steps_up(double x, int n);
}  // namespace rounding

}  // namespace ssclab
