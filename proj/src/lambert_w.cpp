#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cdcopt/optimizer.hpp"

// Lower branch W_{-1} on [-1/e, 0). Halley iteration from a series or
// asymptotic starting point, safeguarded by a bracket on which
// f(w) = w e^w - x is strictly decreasing.

namespace cdcopt {
namespace {

constexpr double kMinusInvE = -0.36787944117144233;
constexpr double kBracketLow = -745.0;
constexpr double kBracketHigh = -1.0;
constexpr int kMaxIterations = 200;

double initial_guess(double x) {
  if (x < -0.25) {
    // Branch-point series in p = -sqrt(2 (1 + e x)).
    const double p = -std::sqrt(std::max(0.0, 2.0 * (1.0 + std::numbers::e * x)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

double residual(double w, double x) { return w * std::exp(w) - x; }

}  // namespace

double lambert_w_m1(double x) {
  if (!(x >= kMinusInvE && x < 0.0)) {
    throw std::domain_error("lambert_w_m1: argument must lie in [-1/e, 0)");
  }
  if (x == kMinusInvE) return -1.0;

  const double tolerance = 1e-12 * std::max(std::fabs(x), 1e-300);
  double lo = kBracketLow;
  double hi = kBracketHigh;
  double w = std::clamp(initial_guess(x), lo, hi);

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::fabs(f) <= tolerance) return w;
    if (f > 0.0) {
      lo = w;
    } else {
      hi = w;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(lo)) {
      break;
    }

    // Halley: w - f / (f' - f f'' / (2 f')), with f' = e^w (w+1) and
    // f'' = e^w (w+2).
    const double wp1 = w + 1.0;
    double next = w;
    if (wp1 != 0.0) {
      next = w - f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    }
    if (!(next > lo && next < hi) || next == w) next = 0.5 * (lo + hi);
    w = next;
  }

  // Best endpoint when the residual tolerance is below float resolution.
  const double r_w = std::fabs(residual(w, x));
  const double r_lo = std::fabs(residual(lo, x));
  const double r_hi = std::fabs(residual(hi, x));
  if (r_lo < r_w && r_lo <= r_hi) return lo;
  if (r_hi < r_w) return hi;
  return w;
}

}  // namespace cdcopt
