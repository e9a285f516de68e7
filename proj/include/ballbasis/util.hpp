#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace ballbasis {

/// Neumaier-compensated accumulator.  Keeps relative summation error near
/// machine epsilon independently of the number of terms.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

/// Logarithmic grid of k points spanning [lo, hi], lo > 0.
inline std::vector<double> log_grid(double lo, double hi, int k) {
  std::vector<double> g;
  if (k <= 0 || !(lo > 0) || !(hi >= lo)) return g;
  if (k == 1 || hi == lo) return {lo};
  g.reserve(static_cast<size_t>(k));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < k; ++i) {
    g.push_back(std::exp(llo + (lhi - llo) * i / (k - 1)));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

inline std::vector<double> linear_grid(double lo, double hi, int k) {
  std::vector<double> g;
  if (k <= 0) return g;
  if (k == 1) return {lo};
  g.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) g.push_back(lo + (hi - lo) * i / (k - 1));
  return g;
}

/// q-quantile (0 <= q <= 1) of the values, by sorted-order interpolation-free
/// selection (lower quantile of the attained values).
inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(xs.begin(), xs.end());
  size_t i = static_cast<size_t>(q * static_cast<double>(xs.size() - 1));
  return xs[std::min(i, xs.size() - 1)];
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
};

/// Ordinary least squares fit y = intercept + slope * x.
inline LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  LinearFit fit;
  const size_t n = std::min(x.size(), y.size());
  fit.points = static_cast<int>(n);
  if (n < 2) return fit;
  CompensatedSum sx, sy;
  for (size_t i = 0; i < n; ++i) {
    sx.add(x[i]);
    sy.add(y[i]);
  }
  const double mx = sx.value() / static_cast<double>(n);
  const double my = sy.value() / static_cast<double>(n);
  CompensatedSum sxx, sxy, syy;
  for (size_t i = 0; i < n; ++i) {
    sxx.add((x[i] - mx) * (x[i] - mx));
    sxy.add((x[i] - mx) * (y[i] - my));
    syy.add((y[i] - my) * (y[i] - my));
  }
  if (sxx.value() <= 0) return fit;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  if (syy.value() > 0) {
    const double ss_res = syy.value() - fit.slope * sxy.value();
    fit.r2 = 1.0 - ss_res / syy.value();
  } else {
    fit.r2 = 1.0;  // all y equal: the flat fit is exact
  }
  return fit;
}

/// FNV-1a 64-bit hash, used to stamp reports with a config fingerprint.
inline std::uint64_t fnv1a64(std::span<const char> bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ballbasis
