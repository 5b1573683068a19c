#include "ssclab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ssclab/errors.hpp"

namespace ssclab {

namespace rounding {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest normal magnitude; below it FMA residuals stop being exact.
constexpr double kNormalMin = std::numeric_limits<double>::min();

void require_finite(double x, const char* op) {
  if (!std::isfinite(x)) {
    throw std::overflow_error(std::string("interval ") + op +
                              " left the finite double range");
  }
}

// Knuth two-sum: s = fl(a+b), err = (a+b) - s exactly.
double two_sum_err(double a, double b, double s) {
  const double bv = s - a;
  const double av = s - bv;
  return (a - av) + (b - bv);
}

}  // namespace

double steps_down(double x, int n) {
  for (int i = 0; i < n; ++i) x = std::nextafter(x, -kInf);
  return x;
}

double steps_up(double x, int n) {
  for (int i = 0; i < n; ++i) x = std::nextafter(x, kInf);
  return x;
}

double add_down(double a, double b) {
  const double s = a + b;
  require_finite(s, "add");
  return two_sum_err(a, b, s) < 0.0 ? std::nextafter(s, -kInf) : s;
}

double add_up(double a, double b) {
  const double s = a + b;
  require_finite(s, "add");
  return two_sum_err(a, b, s) > 0.0 ? std::nextafter(s, kInf) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b) {
  const double p = a * b;
  require_finite(p, "mul");
  if (p != 0.0 && std::fabs(p) < kNormalMin) return std::nextafter(p, -kInf);
  if (p == 0.0 && a != 0.0 && b != 0.0) {
    // underflow to zero: true product may lie just below zero
    return (std::signbit(a) != std::signbit(b)) ? std::nextafter(0.0, -kInf)
                                                : 0.0;
  }
  const double err = std::fma(a, b, -p);
  return err < 0.0 ? std::nextafter(p, -kInf) : p;
}

double mul_up(double a, double b) {
  const double p = a * b;
  require_finite(p, "mul");
  if (p != 0.0 && std::fabs(p) < kNormalMin) return std::nextafter(p, kInf);
  if (p == 0.0 && a != 0.0 && b != 0.0) {
    return (std::signbit(a) == std::signbit(b)) ? std::nextafter(0.0, kInf)
                                                : 0.0;
  }
  const double err = std::fma(a, b, -p);
  return err > 0.0 ? std::nextafter(p, kInf) : p;
}

double div_down(double a, double b) {
  const double q = a / b;
  require_finite(q, "div");
  if (a == 0.0) return 0.0;
  if (q == 0.0 || std::fabs(q) < kNormalMin) {
    // underflow region: residual trick unreliable, widen one step
    return std::nextafter(q, -kInf);
  }
  // residual r = q*b - a, exact; true quotient - q = -r/b
  const double r = std::fma(q, b, -a);
  if (r == 0.0) return q;
  const bool true_below = (r > 0.0) == (b > 0.0);
  return true_below ? std::nextafter(q, -kInf) : q;
}

double div_up(double a, double b) {
  const double q = a / b;
  require_finite(q, "div");
  if (a == 0.0) return 0.0;
  if (q == 0.0 || std::fabs(q) < kNormalMin) {
    return std::nextafter(q, kInf);
  }
  const double r = std::fma(q, b, -a);
  if (r == 0.0) return q;
  const bool true_above = (r > 0.0) != (b > 0.0);
  return true_above ? std::nextafter(q, kInf) : q;
}

double sqrt_down(double a) {
  const double s = std::sqrt(a);
  if (s == 0.0) return 0.0;
  if (s < kNormalMin) return std::nextafter(s, -kInf);
  const double r = std::fma(s, s, -a);  // s^2 - a, exact
  return r > 0.0 ? std::nextafter(s, -kInf) : s;
}

double sqrt_up(double a) {
  const double s = std::sqrt(a);
  if (s < kNormalMin) return std::nextafter(s, kInf);
  const double r = std::fma(s, s, -a);
  return r < 0.0 ? std::nextafter(s, kInf) : s;
}

}  // namespace rounding

using namespace rounding;

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("Interval requires finite lo <= hi");
  }
}

double Interval::mid() const {
  const double m = 0.5 * (lo + hi);
  return std::isfinite(m) ? m : lo + 0.5 * (hi - lo);
}

std::string Interval::str() const {
  std::ostringstream os;
  os.precision(17);
  os << "[" << lo << ", " << hi << "]";
  return os.str();
}

Interval operator+(Interval a, Interval b) {
  return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)};
}

Interval operator-(Interval a, Interval b) {
  return {sub_down(a.lo, b.hi), sub_up(a.hi, b.lo)};
}

Interval operator-(Interval a) { return {-a.hi, -a.lo}; }

Interval operator*(Interval a, Interval b) {
  const double parts[4][2] = {
      {a.lo, b.lo}, {a.lo, b.hi}, {a.hi, b.lo}, {a.hi, b.hi}};
  double lo = mul_down(parts[0][0], parts[0][1]);
  double hi = mul_up(parts[0][0], parts[0][1]);
  for (int i = 1; i < 4; ++i) {
    lo = std::min(lo, mul_down(parts[i][0], parts[i][1]));
    hi = std::max(hi, mul_up(parts[i][0], parts[i][1]));
  }
  return {lo, hi};
}

Interval div(Interval a, Interval b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) {
    throw DegenerateDenominatorError("denominator interval " + b.str() +
                                     " contains zero");
  }
  const double parts[4][2] = {
      {a.lo, b.lo}, {a.lo, b.hi}, {a.hi, b.lo}, {a.hi, b.hi}};
  double lo = div_down(parts[0][0], parts[0][1]);
  double hi = div_up(parts[0][0], parts[0][1]);
  for (int i = 1; i < 4; ++i) {
    lo = std::min(lo, div_down(parts[i][0], parts[i][1]));
    hi = std::max(hi, div_up(parts[i][0], parts[i][1]));
  }
  return {lo, hi};
}

Interval abs(Interval a) {
  if (a.lo >= 0.0) return a;
  if (a.hi <= 0.0) return {-a.hi, -a.lo};
  return {0.0, std::max(-a.lo, a.hi)};
}

Interval min(Interval a, Interval b) {
  return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
}

Interval max(Interval a, Interval b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval hull(Interval a, Interval b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval sqrt(Interval a) {
  if (a.lo < 0.0) throw std::invalid_argument("sqrt of interval with lo < 0");
  return {sqrt_down(a.lo), sqrt_up(a.hi)};
}

Interval exp(Interval a) {
  const double lo = a.lo == 0.0 ? 1.0 : std::max(0.0, steps_down(std::exp(a.lo), 2));
  const double hi = a.hi == 0.0 ? 1.0 : steps_up(std::exp(a.hi), 2);
  return {lo, hi};
}

namespace {

// |v|^p endpoints for the general (non-integer) exponent path; glibc pow is
// sub-ulp, widen a little further to absorb the rounding of p itself.
Interval pow_general(double av, double p) {
  const double w = std::pow(av, p);
  if (!std::isfinite(w)) {
    throw std::overflow_error("pow left the finite double range");
  }
  return {std::max(0.0, steps_down(w, 4)), steps_up(w, 4)};
}

}  // namespace

Interval pow_abs(double v, double p) {
  const double av = std::fabs(v);
  if (av == 0.0) return {0.0, 0.0};
  if (av == 1.0) return {1.0, 1.0};
  if (p == 1.0) return {av, av};
  if (p == 2.0) return {mul_down(av, av), mul_up(av, av)};
  return pow_general(av, p);
}

Interval pow_abs(Interval a, double p) {
  const Interval m = abs(a);  // |a| as an interval, endpoints exact
  if (p == 1.0) return m;
  if (p == 2.0) return {mul_down(m.lo, m.lo), mul_up(m.hi, m.hi)};
  const double lo = m.lo == 0.0 ? 0.0 : (m.lo == 1.0 ? 1.0 : pow_general(m.lo, p).lo);
  const double hi = m.hi == 0.0 ? 0.0 : (m.hi == 1.0 ? 1.0 : pow_general(m.hi, p).hi);
  return {lo, hi};
}

Interval root(Interval a, double p) {
  if (a.lo < 0.0) throw std::invalid_argument("root of interval with lo < 0");
  if (p == 1.0) return a;
  if (p == 2.0) return sqrt(a);
  const double inv = 1.0 / p;
  auto one_side = [&](double x, bool up) {
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double w = std::pow(x, inv);
    // widen enough to cover both pow rounding and the rounding of 1/p
    return up ? steps_up(w, 8) : std::max(0.0, steps_down(w, 8));
  };
  return {one_side(a.lo, false), one_side(a.hi, true)};
}

}  // namespace ssclab
