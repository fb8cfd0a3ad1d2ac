#include "clay/analytics/stats.hpp"

#include "clay/common/error.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <cstdio>
#include <limits>

namespace clay {

void validate(const SummaryStat &s) {
  if (s.n < 2)
    throw validation_error("summary needs n >= 2, got " + std::to_string(s.n));
  if (!std::isfinite(s.mean) || !std::isfinite(s.std))
    throw validation_error("summary values must be finite");
  if (s.std < 0)
    throw validation_error("standard deviation must be >= 0");
}

SummaryStat summarize(std::span<const double> xs) {
  if (xs.size() < 2)
    throw validation_error("need at least 2 samples, got " +
                           std::to_string(xs.size()));
  double sum = 0;
  for (double x : xs) {
    if (!std::isfinite(x))
      throw validation_error("samples must be finite");
    sum += x;
  }
  const double mean = sum / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs)
    ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1)),
          static_cast<int>(xs.size())};
}

double two_sided_p(double t, double df) {
  if (!(df > 0))
    throw validation_error("degrees of freedom must be positive");
  if (std::isnan(t))
    throw validation_error("t statistic is NaN");
  if (std::isinf(t))
    return 0.0;
  const double x = df / (df + t * t);
  if (x >= 1.0)
    return 1.0;
  return boost::math::ibeta(df / 2.0, 0.5, x);
}

double student_t_cdf(double t, double df) {
  const double tail = two_sided_p(t, df) / 2.0;
  return t < 0 ? tail : 1.0 - tail;
}

TTestResult pooled_t_test(const SummaryStat &a, const SummaryStat &b,
                          TTestVariant variant) {
  validate(a);
  validate(b);
  const double na = a.n;
  const double nb = b.n;
  const double va = a.std * a.std;
  const double vb = b.std * b.std;
  const double diff = std::fabs(a.mean - b.mean);

  TTestResult r;
  double se = 0;
  if (variant == TTestVariant::Pooled) {
    r.df = na + nb - 2;
    const double sp2 = ((na - 1) * va + (nb - 1) * vb) / r.df;
    se = std::sqrt(sp2 * (1 / na + 1 / nb));
  } else {
    const double qa = va / na;
    const double qb = vb / nb;
    se = std::sqrt(qa + qb);
    r.df = (qa + qb) * (qa + qb) /
           (qa * qa / (na - 1) + qb * qb / (nb - 1));
    if (!std::isfinite(r.df))
      r.df = na + nb - 2;
  }
  if (se == 0)
    r.t = diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  else
    r.t = diff / se;
  r.p_two_sided = two_sided_p(r.t, r.df);
  r.label = significance_label(r.p_two_sided);
  return r;
}

TTestResult t_test_from_samples(std::span<const double> xs,
                                std::span<const double> ys,
                                TTestVariant variant) {
  return pooled_t_test(summarize(xs), summarize(ys), variant);
}

std::string significance_label(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw validation_error("p-value must lie in [0, 1]");
  if (p < 0.001)
    return "***";
  if (p < 0.01)
    return "**";
  if (p < 0.05)
    return "*";
  if (p < 0.1)
    return "+";
  return "";
}

std::string format_p(double p) {
  if (p < 0.001)
    return "<0.001";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.3f", p);
  return buf;
}

} // namespace clay
