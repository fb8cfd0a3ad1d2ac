#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clay/analytics/stats.hpp"

#include "json.hpp"

namespace clay {

struct MetricInfo {
  std::string id;
  std::string table; // "ux", "workload", "creativity"
  std::string group; // printed grouping, may be empty
};

// Survey items, efficiency metric, and instrument rows in table order.
const std::vector<MetricInfo> &metric_registry();
const MetricInfo *find_metric(std::string_view id);

// Per-condition, per-metric data: raw samples or published summaries.
struct StudyData {
  std::vector<std::string> metrics;    // first-appearance order
  std::vector<std::string> conditions; // first-appearance order
  // Keyed by (condition, metric).
  std::map<std::pair<std::string, std::string>, SummaryStat> summaries;
  std::map<std::pair<std::string, std::string>, std::vector<double>> samples;

  void add_sample(const std::string &metric, const std::string &condition,
                  double value);
  void add_summary(const std::string &metric, const std::string &condition,
                   const SummaryStat &s);
  // Summary of the samples when present, otherwise the stored summary.
  std::optional<SummaryStat> summary(const std::string &metric,
                                     const std::string &condition) const;
};

// Header "metric,condition,participant,value" (samples) or
// "metric,condition,mean,std,n" (summaries). Errors name `source` and the
// 1-based line.
void read_study_csv(std::istream &in, std::string_view source, StudyData &out);
StudyData read_study_csv_file(const std::string &path);

struct ReportRow {
  std::string metric;
  std::string group;
  SummaryStat a;
  SummaryStat b;
  TTestResult test;
};

struct Report {
  std::string condition_a;
  std::string condition_b;
  TTestVariant variant = TTestVariant::Pooled;
  std::vector<ReportRow> rows;
};

// Conditions default to the ones named clay and baseline (any case), else
// the first two seen. Both conditions must hold the same metric set.
Report build_report(const StudyData &data,
                    std::optional<std::string> condition_a = std::nullopt,
                    std::optional<std::string> condition_b = std::nullopt,
                    TTestVariant variant = TTestVariant::Pooled);

std::string render_table(const Report &r);
nlohmann::json to_json(const Report &r);

} // namespace clay
