#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "msmd/common.hpp"
#include "msmd/rational.hpp"

namespace msmd {

class NoRootError : public InputError {
 public:
  using InputError::InputError;
};

class ThresholdUndefined : public InputError {
 public:
  using InputError::InputError;
};

// |x - 1/k| below this is treated as x == 1/k in floating mode.
inline constexpr double kReciprocalGuard = 1e-12;

template <class T>
concept Exponent = std::same_as<T, double> || std::same_as<T, Rational>;

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.to_double(); }

// k such that x == 1/k (k >= 1), if any.
inline std::optional<std::int64_t> reciprocal_integer(const Rational& x) {
  if (x.num() == 1 && x.den() >= 1) return x.den();
  return std::nullopt;
}
inline std::optional<std::int64_t> reciprocal_integer(double x) {
  if (!(x > 0.0)) return std::nullopt;
  const double k = std::round(1.0 / x);
  if (k >= 1.0 && std::fabs(x - 1.0 / k) < kReciprocalGuard) return static_cast<std::int64_t>(k);
  return std::nullopt;
}

// floor(1/x), snapping to k when x is within the guard of 1/k.
template <Exponent Real>
std::int64_t floor_reciprocal(const Real& x) {
  if (auto k = reciprocal_integer(x)) return *k;
  if constexpr (std::same_as<Real, Rational>) {
    return x.reciprocal().floor();
  } else {
    return static_cast<std::int64_t>(std::floor(1.0 / x));
  }
}

namespace detail {

template <Exponent Real>
void check_exponent_domain(const Real& x, const Real& y) {
  if (!(Real(0) < x && x <= Real(1))) throw InputError("f_x: x must lie in (0,1]");
  if (!(Real(0) <= y && y <= Real(1))) throw InputError("f_x: y must lie in [0,1]");
}

// sum_{i=from}^{to} i
inline std::int64_t range_sum(std::int64_t from, std::int64_t to) {
  if (to < from) return 0;
  return (to * (to + 1) - (from - 1) * from) / 2;
}

}  // namespace detail

// f_x(y) = sum_{i=0}^{floor(1/x)} max{i x + y - 1, 0}.
// Evaluated per linear piece: only the terms i >= j with i x + y - 1 > 0 contribute.
template <Exponent Real>
Real exponent_f(const Real& x, const Real& y) {
  detail::check_exponent_domain(x, y);
  const std::int64_t top = floor_reciprocal(x);
  const Real one(1);
  auto active = [&](std::int64_t i) { return Real(i) * x + y - one > Real(0); };
  std::int64_t j;
  if constexpr (std::same_as<Real, Rational>) {
    j = ((one - y) / x).floor() + 1;
  } else {
    j = static_cast<std::int64_t>(std::floor((1.0 - y) / x)) + 1;
  }
  j = std::clamp<std::int64_t>(j, 0, top + 1);
  while (j > 0 && active(j - 1)) --j;
  while (j <= top && !active(j)) ++j;
  if (j > top) return Real(0);
  const std::int64_t terms = top - j + 1;
  return Real(terms) * (y - one) + x * Real(detail::range_sum(j, top));
}

// Left end of the interval on which f_x increases: 1 - floor(1/x) x.
template <Exponent Real>
Real increasing_from(const Real& x) {
  return Real(1) - Real(floor_reciprocal(x)) * x;
}

template <Exponent Real>
struct LevelRoot {
  Real root;                 // closed form from the linear piece containing the root
  double bisection = 0.0;    // independent bisection estimate
  int iterations = 0;
};

// Solves f_x(y) = level on [1 - floor(1/x) x, 1], where f_x is strictly
// increasing. Requires f_x(1) > level.
template <Exponent Real>
LevelRoot<Real> solve_level(const Real& x, const Real& level, double tol = 1e-12) {
  if (!(Real(0) < x && x <= Real(1))) throw InputError("solve_level: x must lie in (0,1]");
  if (!(level > Real(0))) throw InputError("solve_level: level must be positive");
  const Real one(1);
  if (!(exponent_f(x, one) > level)) {
    throw NoRootError("solve_level: f_x(1) <= level, no root in (0,1)");
  }
  const std::int64_t top = floor_reciprocal(x);

  LevelRoot<Real> out{Real(0)};
  bool found = false;
  // On [1 - j x, 1 - (j-1) x] exactly the terms i >= j are active.
  for (std::int64_t j = top; j >= 1; --j) {
    const std::int64_t terms = top - j + 1;
    const Real y = one + (level - x * Real(detail::range_sum(j, top))) / Real(terms);
    if (y <= one - Real(j - 1) * x) {
      out.root = y;
      found = true;
      break;
    }
  }
  if (!found) throw NoRootError("solve_level: no linear piece contains the root");

  const double xd = to_double(x);
  const double target = to_double(level);
  double lo = std::max(0.0, to_double(increasing_from(x)));
  double hi = 1.0;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    out.iterations = it + 1;
    const double f = exponent_f(xd, mid);
    if (std::fabs(f - target) <= tol || hi - lo <= 0.0) break;
    if (f < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.bisection = mid;
  return out;
}

// Admissible x ranges of the two thresholds.
inline constexpr double kLevelOneMaxX = 0.5;
inline constexpr double kLevelFourMaxX = 0.125;

namespace detail {
template <Exponent Real>
void check_threshold_range(const Real& x, std::int64_t max_den, const char* name) {
  bool ok;
  if constexpr (std::same_as<Real, Rational>) {
    ok = Real(0) < x && x <= Rational(1, max_den);
  } else {
    ok = x > 0.0 && x <= 1.0 / static_cast<double>(max_den) + kReciprocalGuard;
  }
  if (!ok) {
    throw ThresholdUndefined(std::string(name) + " is undefined for x outside (0, 1/" + std::to_string(max_den) + "]");
  }
}
}  // namespace detail

// Unique root of f_x(y) = 1, x in (0, 1/2].
template <Exponent Real>
Real y1(const Real& x, double tol = 1e-12) {
  detail::check_threshold_range(x, 2, "y1");
  return solve_level(x, Real(1), tol).root;
}

// Unique root of f_x(y) = 4, x in (0, 1/8].
template <Exponent Real>
Real y4(const Real& x, double tol = 1e-12) {
  detail::check_threshold_range(x, 8, "y4");
  return solve_level(x, Real(4), tol).root;
}

template <Exponent Real>
struct CurvePoint {
  Real x;
  Real y;
};

template <Exponent Real>
struct ExponentCurve {
  Real level;
  std::vector<CurvePoint<Real>> points;
};

// Uniform grid lo, lo+step, ... <= hi, plus 1/k and 1/k + jump_offset for
// every 1/k in (lo, hi] with 2 <= k <= max_k, so the one-sided limits at the
// discontinuities are sampled. Sorted and deduplicated.
template <Exponent Real>
std::vector<Real> curve_grid(const Real& lo, const Real& hi, const Real& step, const Real& jump_offset,
                             std::int64_t max_k = 20) {
  if (!(step > Real(0))) throw InputError("curve_grid: step must be positive");
  if (!(Real(0) < lo && lo <= hi)) throw InputError("curve_grid: need 0 < lo <= hi");
  std::vector<Real> grid;
  for (std::int64_t i = 0;; ++i) {
    const Real x = lo + Real(i) * step;
    if (x > hi) break;
    grid.push_back(x);
  }
  for (std::int64_t k = 2; k <= max_k; ++k) {
    Real r;
    if constexpr (std::same_as<Real, Rational>) {
      r = Rational(1, k);
    } else {
      r = 1.0 / static_cast<double>(k);
    }
    if (r < lo || r > hi) continue;
    grid.push_back(r);
    if (r + jump_offset <= hi) grid.push_back(r + jump_offset);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(), [](const Real& a, const Real& b) {
               if constexpr (std::same_as<Real, Rational>) {
                 return a == b;
               } else {
                 return std::fabs(a - b) < kReciprocalGuard;
               }
             }),
             grid.end());
  return grid;
}

// Level-set curves {(x, y) : f_x(y) = level}. Grid points where the level is
// not attained (f_x(1) <= level) are skipped; for level 4 that is exactly
// x > 1/8, for level 1 exactly x > 1/2.
template <Exponent Real>
std::vector<ExponentCurve<Real>> emit_curves(const std::vector<Real>& grid, const std::vector<Real>& levels,
                                             double tol = 1e-12) {
  std::vector<ExponentCurve<Real>> curves;
  for (const auto& level : levels) {
    ExponentCurve<Real> curve{level, {}};
    for (const auto& x : grid) {
      if (!(Real(0) < x && x <= Real(1))) continue;
      if (!(exponent_f(x, Real(1)) > level)) continue;
      curve.points.push_back({x, solve_level(x, level, tol).root});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

// Scalars governing the G(n,p) distance profile at d = n^x.
struct RegimeParams {
  double x = 0.0;
  double n = 0.0;
  double d = 0.0;
  int i_star = 0;
  double c = 0.0;      // d^{i*+1} / n
  double gamma = 0.0;  // max{sqrt(ln n / d), d^{i*} / n}
};

// i* = floor(1/x), except i* = k - 1 when x = 1/k.
inline int regime_i_star(double x) {
  if (auto k = reciprocal_integer(x); k && *k >= 2) return static_cast<int>(*k - 1);
  return static_cast<int>(std::floor(1.0 / x));
}

// Regime with an explicit (e.g. measured) average degree.
inline RegimeParams regime_with_degree(double n, double d, double x) {
  if (!(n >= 3.0)) throw InputError("regime: n must be at least 3");
  if (!(x > 0.0 && x < 1.0)) throw InputError("regime: x must lie in (0,1)");
  if (!(d > 0.0)) throw InputError("regime: average degree must be positive");
  RegimeParams r;
  r.x = x;
  r.n = n;
  r.d = d;
  r.i_star = regime_i_star(x);
  r.c = std::pow(d, r.i_star + 1) / n;
  r.gamma = std::max(std::sqrt(std::log(n) / d), std::pow(d, r.i_star) / n);
  return r;
}

// Regime under the convention d = n^x.
inline RegimeParams regime(double n, double x) {
  if (!(n >= 3.0)) throw InputError("regime: n must be at least 3");
  if (!(x > 0.0 && x < 1.0)) throw InputError("regime: x must lie in (0,1)");
  return regime_with_degree(n, std::pow(n, x), x);
}

struct PmfMax {
  std::uint64_t argmax = 0;
  double probability = 1.0;
};

// log Pr(Bin(trials, p) = z) from log-gamma.
inline double binom_log_pmf(std::uint64_t trials, double p, std::uint64_t z) {
  if (z > trials) return -INFINITY;
  if (p <= 0.0) return z == 0 ? 0.0 : -INFINITY;
  if (p >= 1.0) return z == trials ? 0.0 : -INFINITY;
  const double n = static_cast<double>(trials);
  const double k = static_cast<double>(z);
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1) + k * std::log(p) +
         (n - k) * std::log1p(-p);
}

// Maximum of the Bin(trials, p) pmf. Weights relative to the mode come from
// the ratio pmf(z+1)/pmf(z) = (trials - z)/(z + 1) * p/(1 - p); the maximum is
// the reciprocal of their total, so nothing underflows.
inline PmfMax binom_pmf_max(std::uint64_t trials, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("binom_pmf_max: p must lie in [0,1]");
  if (p == 0.0) return {0, 1.0};
  if (p == 1.0) return {trials, 1.0};
  const double odds = p / (1.0 - p);
  auto ratio = [&](std::uint64_t z) {  // pmf(z+1) / pmf(z)
    return static_cast<double>(trials - z) / static_cast<double>(z + 1) * odds;
  };
  std::uint64_t mode = static_cast<std::uint64_t>(std::floor((static_cast<double>(trials) + 1.0) * p));
  mode = std::min(mode, trials);
  while (mode > 0 && ratio(mode - 1) <= 1.0) --mode;  // ties resolve to the first maximiser
  while (mode < trials && ratio(mode) > 1.0) ++mode;

  constexpr double kNegligible = 1e-20;
  double total = 1.0;
  double w = 1.0;
  for (std::uint64_t z = mode; z < trials; ++z) {
    w *= ratio(z);
    total += w;
    if (w < kNegligible * total) break;
  }
  w = 1.0;
  for (std::uint64_t z = mode; z > 0; --z) {
    w /= ratio(z - 1);
    total += w;
    if (w < kNegligible * total) break;
  }
  return {mode, 1.0 / total};
}

}  // namespace msmd
