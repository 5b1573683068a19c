#include "ssclab/interval.hpp"

#include <cmath>
#include <limits>

#include "doctest.h"
#include "ssclab/errors.hpp"
#include "ssclab/rng.hpp"

using namespace ssclab;

namespace {

// long-double reference: the interval result must enclose the value the
// operation takes on representative reals inside the operands
void check_encloses(const Interval& result, long double reference) {
  CHECK(static_cast<long double>(result.lo) <= reference);
  CHECK(static_cast<long double>(result.hi) >= reference);
}

}  // namespace

TEST_CASE("exact arithmetic stays exact") {
  const Interval a{3.0, 3.0};
  const Interval b{4.0, 4.0};
  CHECK((a + b) == Interval{7.0, 7.0});
  CHECK((a * b) == Interval{12.0, 12.0});
  CHECK((a - b) == Interval{-1.0, -1.0});
  CHECK(sqrt(Interval{25.0, 25.0}) == Interval{5.0, 5.0});
  CHECK(pow_abs(-3.0, 2.0) == Interval{9.0, 9.0});
  CHECK(pow_abs(0.5, 2.0) == Interval{0.25, 0.25});
  CHECK(root(Interval{16.0, 16.0}, 2.0) == Interval{4.0, 4.0});
  CHECK(div(Interval{1.0, 1.0}, Interval{4.0, 4.0}) == Interval{0.25, 0.25});
  CHECK(exp(Interval{0.0, 0.0}) == Interval{1.0, 1.0});
  CHECK(pow_abs(1.0, 3.7) == Interval{1.0, 1.0});
  CHECK(pow_abs(0.0, 1.5) == Interval{0.0, 0.0});
}

TEST_CASE("directed rounding brackets the exact sum and product") {
  Rng rng(20250811);
  for (int i = 0; i < 20000; ++i) {
    const double a = rng.uniform(-1e6, 1e6) * std::pow(10.0, -(double)rng.below(12));
    const double b = rng.uniform(-1e6, 1e6) * std::pow(10.0, -(double)rng.below(12));
    const long double sum = static_cast<long double>(a) + b;
    CHECK(static_cast<long double>(rounding::add_down(a, b)) <= sum);
    CHECK(static_cast<long double>(rounding::add_up(a, b)) >= sum);
    const long double prod = static_cast<long double>(a) * b;
    CHECK(static_cast<long double>(rounding::mul_down(a, b)) <= prod);
    CHECK(static_cast<long double>(rounding::mul_up(a, b)) >= prod);
    if (b != 0.0) {
      const long double quot = static_cast<long double>(a) / b;
      CHECK(static_cast<long double>(rounding::div_down(a, b)) <= quot);
      CHECK(static_cast<long double>(rounding::div_up(a, b)) >= quot);
    }
    const double aa = std::fabs(a);
    const long double rt = std::sqrt(static_cast<long double>(aa));
    CHECK(static_cast<long double>(rounding::sqrt_down(aa)) <= rt);
    CHECK(static_cast<long double>(rounding::sqrt_up(aa)) >= rt);
  }
}

TEST_CASE("directed rounding is tight: at most one ulp apart") {
  Rng rng(99);
  for (int i = 0; i < 5000; ++i) {
    const double a = rng.uniform(-100.0, 100.0);
    const double b = rng.uniform(-100.0, 100.0);
    const double lo = rounding::add_down(a, b);
    const double hi = rounding::add_up(a, b);
    CHECK(std::nextafter(lo, std::numeric_limits<double>::infinity()) >= hi);
  }
}

TEST_CASE("transcendental enclosures") {
  Rng rng(7);
  for (int i = 0; i < 5000; ++i) {
    const double v = rng.uniform(-30.0, 3.0);
    const Interval e = exp(Interval{v, v});
    check_encloses(e, std::exp(static_cast<long double>(v)));
    CHECK(e.lo >= 0.0);

    const double x = rng.uniform(0.0, 50.0);
    const double p = rng.uniform(1.0, 4.0);
    check_encloses(pow_abs(x, p),
                   std::pow(static_cast<long double>(x), p));
    check_encloses(root(Interval{x, x}, p),
                   std::pow(static_cast<long double>(x),
                            1.0L / static_cast<long double>(p)));
  }
}

TEST_CASE("interval algebra on mixed-sign operands") {
  const Interval a{-2.0, 3.0};
  const Interval b{-1.0, 4.0};
  const Interval prod = a * b;
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const double u = rng.uniform(a.lo, a.hi);
    const double v = rng.uniform(b.lo, b.hi);
    CHECK(prod.contains(u * v));
    CHECK((a + b).contains(u + v));
    CHECK((a - b).contains(u - v));
    CHECK(min(a, b).contains(std::min(u, v)));
    CHECK(max(a, b).contains(std::max(u, v)));
    CHECK(abs(a).contains(std::fabs(u)));
  }
}

TEST_CASE("division by an interval containing zero is rejected") {
  CHECK_THROWS_AS(div(Interval{1.0, 1.0}, Interval{-1.0, 1.0}),
                  DegenerateDenominatorError);
  CHECK_THROWS_AS(div(Interval{1.0, 1.0}, Interval{0.0, 0.0}),
                  DegenerateDenominatorError);
}

TEST_CASE("invalid endpoints are rejected") {
  CHECK_THROWS_AS(Interval(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}
