#include "mixer/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mixer {

MeanSE mean_and_se(std::span<const double> xs) {
  RunningStats rs;
  for (double x : xs) rs.add(x);
  return {rs.mean(), rs.se(), rs.n()};
}

void RunningStats::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

double RunningStats::variance() const {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double RunningStats::se() const {
  return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

LinearFit ols_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("ols_fit: need two matched samples of size >= 2");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_fit: degenerate x values");
  LinearFit fit;
  fit.n = static_cast<std::int64_t>(x.size());
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += r * r;
  }
  fit.residual_rms = std::sqrt(ss_res / n);
  fit.slope_se = x.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
  return fit;
}

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;

// Series expansion of P(a,x), good for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x), good for x >= a + 1. Modified Lentz.
double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) {
    throw std::invalid_argument("regularized_gamma_p: need a > 0, x >= 0");
  }
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) {
    throw std::invalid_argument("regularized_gamma_q: need a > 0, x >= 0");
  }
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double chi_square_sf(double stat, int df) {
  if (df < 1) throw std::invalid_argument("chi_square_sf: df < 1");
  if (stat <= 0.0) return 1.0;
  return regularized_gamma_q(0.5 * df, 0.5 * stat);
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double dm = static_cast<double>(m);
    double aa = dm * (b - dm) * x / ((qam + 2.0 * dm) * (a + 2.0 * dm));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + dm) * (qab + dm) * x / ((a + 2.0 * dm) * (qap + 2.0 * dm));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) {
    throw std::invalid_argument("regularized_incomplete_beta: need a, b > 0");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                             std::lgamma(b) + a * std::log(x) +
                             b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

namespace {

// Quantile of Beta(a, b) by bisection; the CDF is monotone.
double beta_quantile(double a, double b, double p) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (regularized_incomplete_beta(a, b, mid) < p) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Interval clopper_pearson(std::int64_t successes, std::int64_t n, double alpha) {
  if (n < 1 || successes < 0 || successes > n) {
    throw std::invalid_argument("clopper_pearson: bad counts");
  }
  if (alpha <= 0.0 || alpha >= 1.0) {
    throw std::invalid_argument("clopper_pearson: alpha outside (0,1)");
  }
  const auto k = static_cast<double>(successes);
  const auto nn = static_cast<double>(n);
  Interval iv;
  iv.lo = successes == 0 ? 0.0 : beta_quantile(k, nn - k + 1.0, alpha / 2.0);
  iv.hi = successes == n ? 1.0 : beta_quantile(k + 1.0, nn - k, 1.0 - alpha / 2.0);
  return iv;
}

ChiSquareResult two_sample_binned_test(const Histogram& h1, const Histogram& h2,
                                       std::int64_t min_pooled) {
  // Pooled counts over the union of observed values, in value order.
  Histogram pooled = h1;
  for (const auto& [v, c] : h2) pooled[v] += c;
  std::int64_t n1 = 0, n2 = 0;
  for (const auto& [v, c] : h1) n1 += c;
  for (const auto& [v, c] : h2) n2 += c;
  if (n1 == 0 || n2 == 0) {
    throw std::invalid_argument("two_sample_binned_test: empty sample");
  }

  auto count_in = [](const Histogram& h, std::int64_t lo, std::int64_t hi) {
    std::int64_t total = 0;
    for (auto it = h.lower_bound(lo); it != h.end() && it->first <= hi; ++it) {
      total += it->second;
    }
    return total;
  };

  // Greedy left-to-right merge until each bin pools >= min_pooled counts;
  // the final bin absorbs any leftover.
  std::vector<std::pair<std::int64_t, std::int64_t>> bins;  // [lo, hi]
  std::int64_t bin_lo = pooled.begin()->first;
  std::int64_t acc = 0;
  for (const auto& [v, c] : pooled) {
    acc += c;
    if (acc >= min_pooled) {
      bins.emplace_back(bin_lo, v);
      acc = 0;
      bin_lo = v + 1;
    }
  }
  if (acc > 0) {
    if (bins.empty()) bins.emplace_back(bin_lo, pooled.rbegin()->first);
    else bins.back().second = pooled.rbegin()->first;
  }

  ChiSquareResult result;
  result.bins = static_cast<std::int64_t>(bins.size());
  if (bins.size() < 2) {
    result.df = 0;
    result.p_value = 1.0;
    return result;
  }
  const double total = static_cast<double>(n1 + n2);
  for (const auto& [lo, hi] : bins) {
    const double o1 = static_cast<double>(count_in(h1, lo, hi));
    const double o2 = static_cast<double>(count_in(h2, lo, hi));
    const double e1 = static_cast<double>(n1) * (o1 + o2) / total;
    const double e2 = static_cast<double>(n2) * (o1 + o2) / total;
    result.statistic += (o1 - e1) * (o1 - e1) / e1;
    result.statistic += (o2 - e2) * (o2 - e2) / e2;
  }
  result.df = static_cast<int>(bins.size()) - 1;
  result.p_value = chi_square_sf(result.statistic, result.df);
  return result;
}

}  // namespace mixer
