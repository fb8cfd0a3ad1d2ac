#include "doctest.h"

#include "clay/analytics/report.hpp"
#include "clay/analytics/stats.hpp"
#include "clay/analytics/surveys.hpp"
#include "clay/common/error.hpp"
#include "clay/common/rng.hpp"

#include <cmath>
#include <sstream>

using namespace clay;

namespace {

// Composite Simpson integration of the t density from 0 to |t|.
double t_cdf_quadrature(double t, double df) {
  const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
                   std::sqrt(df * M_PI);
  auto pdf = [&](double x) { return c * std::pow(1 + x * x / df, -(df + 1) / 2); };
  const int n = 20000;
  const double a = std::fabs(t), h = a / n;
  double sum = pdf(0) + pdf(a);
  for (int i = 1; i < n; ++i)
    sum += pdf(i * h) * (i % 2 ? 4 : 2);
  const double half = sum * h / 3;
  return t >= 0 ? 0.5 + half : 0.5 - half;
}

} // namespace

TEST_SUITE("analytics") {

TEST_CASE("t CDF agrees with quadrature to 1e-6") {
  for (double df : {1.0, 2.0, 5.0, 9.0, 18.0, 30.0, 17.3})
    for (double t : {-4.0, -2.1068, -0.5, 0.0, 0.3, 1.0, 2.1068, 3.5, 6.0}) {
      CHECK_MESSAGE(std::fabs(student_t_cdf(t, df) - t_cdf_quadrature(t, df)) <= 1e-6,
                    "df=" << df << " t=" << t);
      CHECK(std::fabs(two_sided_p(t, df) -
                      2 * (1 - t_cdf_quadrature(std::fabs(t), df))) <= 1e-6);
    }
  CHECK(two_sided_p(0, 18) == 1.0);
  CHECK(two_sided_p(INFINITY, 18) == 0.0);
}

TEST_CASE("pooled t-test examples") {
  const auto r = pooled_t_test({6.6, 2.17, 10}, {11.4, 6.87, 10});
  CHECK(r.df == 18);
  CHECK(std::fabs(r.p_two_sided - 0.049) <= 0.005);
  CHECK(r.label == "*");
  const double sp = std::sqrt((9 * 2.17 * 2.17 + 9 * 6.87 * 6.87) / 18);
  CHECK(r.t == doctest::Approx(4.8 / (sp * std::sqrt(0.2))));

  const auto w = pooled_t_test({6.6, 2.17, 10}, {11.4, 6.87, 10}, TTestVariant::Welch);
  CHECK(w.df < 18);
  CHECK(std::fabs(w.p_two_sided - 0.059) <= 0.005);

  CHECK(std::fabs(pooled_t_test({84.6, 13.47, 10}, {62.9, 22.70, 10}).p_two_sided - 0.018) <=
        0.005);
  const auto same = pooled_t_test({5, 1, 10}, {5, 1, 10});
  CHECK(same.t == 0);
  CHECK(same.p_two_sided == 1);
  CHECK(same.label == "");
  const auto exact = pooled_t_test({5, 0, 10}, {6, 0, 10});
  CHECK(exact.p_two_sided == 0);
  CHECK_THROWS_AS(pooled_t_test({5, 1, 1}, {5, 1, 10}), Error);
  CHECK_THROWS_AS(pooled_t_test({5, -1, 10}, {5, 1, 10}), Error);
  CHECK_THROWS_AS(pooled_t_test({NAN, 1, 10}, {5, 1, 10}), Error);
}

TEST_CASE("t-test from samples") {
  const std::vector<double> xs{1, 2, 3}, ys{101, 102, 103};
  const auto r = t_test_from_samples(xs, ys);
  CHECK(r.p_two_sided < 0.001);
  CHECK(r.label == "***");
  CHECK(t_test_from_samples(xs, xs).p_two_sided == 1);
  const std::vector<double> one{1};
  CHECK_THROWS_AS(t_test_from_samples(one, xs), Error);
  const auto s = summarize(xs);
  CHECK(s.mean == 2);
  CHECK(s.std == 1);
  CHECK(s.n == 3);
}

TEST_CASE("t-test properties over random samples") {
  DeterministicRng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> xs(2 + rng.index(15)), ys(2 + rng.index(15));
    for (auto &x : xs)
      x = rng.unit() * 10;
    for (auto &y : ys)
      y = rng.unit() * 10 + rng.unit() * 3;
    const double k = 0.1 + rng.unit() * 50;
    for (auto variant : {TTestVariant::Pooled, TTestVariant::Welch}) {
      const auto ab = t_test_from_samples(xs, ys, variant);
      const auto ba = t_test_from_samples(ys, xs, variant);
      CHECK(ab.p_two_sided == doctest::Approx(ba.p_two_sided).epsilon(1e-12));
      auto xk = xs, yk = ys;
      for (auto &x : xk)
        x *= k;
      for (auto &y : yk)
        y *= k;
      const auto scaled = t_test_from_samples(xk, yk, variant);
      CHECK(scaled.t == doctest::Approx(ab.t).epsilon(1e-9));
      CHECK(scaled.df == doctest::Approx(ab.df).epsilon(1e-9));
      CHECK(scaled.p_two_sided == doctest::Approx(ab.p_two_sided).epsilon(1e-9));
      const auto direct = pooled_t_test(summarize(xs), summarize(ys), variant);
      CHECK(direct.p_two_sided == ab.p_two_sided);
      CHECK(ab.p_two_sided >= 0);
      CHECK(ab.p_two_sided <= 1);
    }
  }
}

TEST_CASE("significance labels and p formatting") {
  CHECK(significance_label(0.049) == "*");
  CHECK(significance_label(0.096) == "+");
  CHECK(significance_label(0.0006) == "***");
  CHECK(significance_label(0.006) == "**");
  CHECK(significance_label(0.05) == "+");
  CHECK(significance_label(0.1) == "");
  CHECK(significance_label(1) == "");
  CHECK_THROWS_AS(significance_label(-0.1), Error);
  CHECK_THROWS_AS(significance_label(1.5), Error);
  CHECK(format_p(0.0004) == "<0.001");
  CHECK(format_p(0.0494) == "0.049");
}

TEST_CASE("rationals") {
  CHECK(parse_rational("18.5") == Rational(37, 2));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("7/2") == Rational(7, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK(to_string(Rational(200, 3)) == "200/3");
  CHECK(to_double(Rational(1, 4)) == 0.25);
}

TEST_CASE("NASA-TLX") {
  TlxResponse r;
  CHECK(nasa_tlx_raw(r) == Rational(0));
  const std::array<const char *, 6> means{"21", "11", "17", "76", "83", "18.5"};
  for (int i = 0; i < 6; ++i)
    r.ratings[i] = parse_rational(means[i]);
  CHECK(nasa_tlx_raw(r) == Rational(151, 4));
  CHECK_THROWS_AS(nasa_tlx_weighted(r), Error);

  std::array<TlxSubscale, 15> winners{};
  for (int i = 0; i < 15; ++i)
    winners[i] = tlx_pairs()[i].first;
  r.pair_winners = winners;
  const auto w = tlx_weights(r);
  CHECK(w == std::array<int, 6>{5, 4, 3, 2, 1, 0});
  Rational oracle = 0;
  for (int i = 0; i < 6; ++i)
    oracle += r.ratings[i] * w[i];
  CHECK(nasa_tlx_weighted(r) == oracle / 15);

  for (auto &x : r.ratings)
    x = 100;
  CHECK(nasa_tlx_raw(r) == Rational(100));
  CHECK(nasa_tlx_weighted(r) == Rational(100));

  r.ratings[0] = 101;
  CHECK_THROWS_AS(validate(r), Error);
  r.ratings[0] = 0;
  (*r.pair_winners)[0] = TlxSubscale::Frustration;
  CHECK_THROWS_AS(validate(r), Error);
  CHECK(tlx_pairs().size() == 15);
}

TEST_CASE("Creativity Support Index") {
  CsiResponse r;
  r.pair_counts = {5, 2, 2, 2, 2, 2};
  for (auto &f : r.items)
    f = {Rational(5), Rational(5)};
  r.items[0] = {Rational(10), Rational(10)};
  const auto s = csi_score(r);
  CHECK(s.total == Rational(200, 3));
  CHECK(s.per_factor[0] == Rational(100));
  CHECK(s.per_factor[1] == Rational(50));

  for (auto &f : r.items)
    f = {Rational(10), Rational(10)};
  CHECK(csi_score(r).total == Rational(100));
  for (auto &f : r.items)
    f = {Rational(0), Rational(0)};
  CHECK(csi_score(r).total == Rational(0));

  r.pair_counts = {5, 5, 5, 0, 0, 1};
  CHECK_THROWS_AS(csi_score(r), Error);
  r.pair_counts = {6, 5, 4, 0, 0, 0};
  CHECK_THROWS_AS(validate(r), Error);
  r.pair_counts = {5, 5, 5, 0, 0, 0};
  r.items[2][1] = Rational(21, 2);
  CHECK_THROWS_AS(validate(r), Error);
}

TEST_CASE("CSI is bounded and monotone") {
  DeterministicRng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    CsiResponse r;
    int left = 15;
    std::array<int, 6> counts{};
    while (left > 0) {
      const auto f = rng.index(6);
      if (counts[f] < 5) {
        ++counts[f];
        --left;
      }
    }
    r.pair_counts = counts;
    for (auto &f : r.items)
      for (auto &item : f)
        item = Rational(static_cast<std::int64_t>(rng.index(21)), 2);
    const Rational total = csi_score(r).total;
    CHECK(total >= Rational(0));
    CHECK(total <= Rational(100));
    auto bumped = r;
    auto &item = bumped.items[rng.index(6)][rng.index(2)];
    item = std::min(Rational(10), item + Rational(1, 2));
    CHECK(csi_score(bumped).total >= total);
  }
}

TEST_CASE("Likert validation") {
  CHECK_NOTHROW(validate(LikertResponse{"effective", 7}));
  CHECK_THROWS_AS(validate(LikertResponse{"effective", 0}), Error);
  CHECK_THROWS_AS(validate(LikertResponse{"effective", 8}), Error);
}

TEST_CASE("metric registry") {
  const auto &reg = metric_registry();
  CHECK(reg.size() == 28);
  CHECK(find_metric("Interaction Count"));
  CHECK(find_metric("TLX Score")->table == "workload");
  CHECK(find_metric("CSI Score")->table == "creativity");
  CHECK(find_metric("Match Goal")->group == "self-perceived experience using the AI system");
  CHECK_FALSE(find_metric("nope"));
}

TEST_CASE("study CSV: summaries") {
  const StudyData d = read_study_csv_file(CLAY_DATA_DIR "/study_summaries.csv");
  CHECK(d.conditions == std::vector<std::string>{"CLAY", "Baseline"});
  CHECK(d.metrics.size() == 28);
  const Report r = build_report(d);
  CHECK(r.condition_a == "CLAY");
  CHECK(r.rows.size() == 28);
  const auto row = std::find_if(r.rows.begin(), r.rows.end(),
                                [](const ReportRow &x) { return x.metric == "TLX Score"; });
  REQUIRE(row != r.rows.end());
  CHECK(std::fabs(row->test.p_two_sided - 0.04) <= 0.005);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    const auto rank = [&](const std::string &id) {
      return find_metric(id) - metric_registry().data();
    };
    CHECK(rank(r.rows[i - 1].metric) < rank(r.rows[i].metric));
  }

  const std::string table = render_table(r);
  CHECK(table.find("Interaction Count") != std::string::npos);
  CHECK(table.find("p<0.05") != std::string::npos);
  const auto j = to_json(r);
  for (auto key : {"metric", "group", "mean_a", "std_a", "mean_b", "std_b", "t", "df", "p",
                   "label", "n_a", "n_b"})
    CHECK_MESSAGE(j["rows"][0].contains(key), key);
}

TEST_CASE("study CSV: samples, errors and mismatches") {
  std::istringstream samples("metric,condition,participant,value\n"
                             "Effective,A,p1,5\nEffective,A,p2,6\nEffective,A,p3,7\n"
                             "Effective,B,p1,1\nEffective,B,p2,2\n"
                             "\"Save Time\",A,p1,3\n\"Save Time\",A,p2,4\n"
                             "Save Time,B,p1,3\nSave Time,B,p2,5\n");
  StudyData d;
  read_study_csv(samples, "s.csv", d);
  const auto a = d.summary("Effective", "A");
  REQUIRE(a);
  CHECK(a->mean == 6);
  CHECK(a->n == 3);
  const Report r = build_report(d);
  CHECK(r.condition_a == "A");
  CHECK(r.rows.size() == 2);
  const std::vector<double> xs{5, 6, 7}, ys{1, 2};
  CHECK(r.rows[0].test.p_two_sided == t_test_from_samples(xs, ys).p_two_sided);

  std::istringstream bad("metric,condition,participant,value\nEffective,A,p1,5\nEffective,A,p2,x\n");
  StudyData e;
  try {
    read_study_csv(bad, "bad.csv", e);
    FAIL("expected an error");
  } catch (const Error &err) {
    CHECK(std::string(err.what()).find("bad.csv:3") != std::string::npos);
  }
  std::istringstream dup("metric,condition,participant,value\nEffective,A,p1,5\nEffective,A,p1,6\n");
  StudyData f;
  CHECK_THROWS_AS(read_study_csv(dup, "dup.csv", f), Error);

  StudyData m;
  m.add_summary("Effective", "clay", {1, 1, 10});
  m.add_summary("Effective", "baseline", {1, 1, 10});
  m.add_summary("Productive", "clay", {1, 1, 10});
  try {
    build_report(m);
    FAIL("expected an error");
  } catch (const Error &err) {
    CHECK(err.code() == ErrorCode::validation);
    CHECK(std::string(err.what()).find("Productive") != std::string::npos);
  }
  CHECK_THROWS_AS(build_report(StudyData{}), Error);
}

}
