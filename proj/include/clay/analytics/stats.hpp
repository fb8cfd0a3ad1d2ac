#pragma once

#include <span>
#include <string>

namespace clay {

struct SummaryStat {
  double mean = 0.0;
  double std = 0.0; // sample standard deviation (n - 1)
  int n = 0;
};

// Throws a validation Error when n < 2, std < 0 or a value is not finite.
void validate(const SummaryStat &s);

SummaryStat summarize(std::span<const double> xs);

enum class TTestVariant { Pooled, Welch };

struct TTestResult {
  double t = 0.0; // |difference of means| / standard error
  double df = 0.0;
  double p_two_sided = 1.0;
  std::string label;
};

// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double two_sided_p(double t, double df);

// Student's t CDF.
double student_t_cdf(double t, double df);

// Pooled-variance Student test by default; Welch-Satterthwaite on request.
TTestResult pooled_t_test(const SummaryStat &a, const SummaryStat &b,
                          TTestVariant variant = TTestVariant::Pooled);

TTestResult t_test_from_samples(std::span<const double> xs,
                                std::span<const double> ys,
                                TTestVariant variant = TTestVariant::Pooled);

// "***" p<0.001, "**" p<0.01, "*" p<0.05, "+" p<0.1, else "".
// Throws a validation Error for p outside [0, 1].
std::string significance_label(double p);

// "<0.001" below the smallest threshold, otherwise three decimals.
std::string format_p(double p);

} // namespace clay
