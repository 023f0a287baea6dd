#pragma once

#include <cstdint>
#include <map>
#include <span>

namespace mixer {

struct MeanSE {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  std::int64_t n = 0;
};

MeanSE mean_and_se(std::span<const double> xs);

// Welford's online mean/variance.
class RunningStats {
 public:
  void add(double x);
  std::int64_t n() const { return n_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance (n - 1 denominator)
  double se() const;

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
  double residual_rms = 0.0;
  std::int64_t n = 0;
};

// Unweighted ordinary least squares of y on x. Needs n >= 2 and
// non-degenerate x.
LinearFit ols_fit(std::span<const double> x, std::span<const double> y);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution with df degrees of
// freedom: P[X > stat].
double chi_square_sf(double stat, int df);

// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Exact (Clopper-Pearson) binomial confidence interval at confidence
// 1 - alpha.
Interval clopper_pearson(std::int64_t successes, std::int64_t n, double alpha);

struct ChiSquareResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::int64_t bins = 0;
};

using Histogram = std::map<std::int64_t, std::int64_t>;

// Two-sample chi-square test on integer-valued data. Adjacent values are
// merged left to right until each bin holds at least min_pooled pooled
// counts (leftover mass joins the last bin), so expected cell counts stay
// away from zero. Deterministic. With fewer than two bins the test is
// vacuous and p = 1.
ChiSquareResult two_sample_binned_test(const Histogram& h1, const Histogram& h2,
                                       std::int64_t min_pooled = 20);

}  // namespace mixer
