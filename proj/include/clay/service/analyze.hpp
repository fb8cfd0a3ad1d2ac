#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "clay/analytics/report.hpp"
#include "clay/core/phase.hpp"

namespace clay {

struct SessionCount {
  std::string source;
  std::string session_id;
  SessionMode mode = SessionMode::Clay;
  std::string style_seed;
  int events = 0;
  int interaction_count = 0;
  int artifacts = 0;
};

struct Analysis {
  std::vector<SessionCount> sessions;
  StudyData data;
  Report report;
};

// Condition names used for log-derived samples.
inline constexpr const char *kClayCondition = "CLAY";
inline constexpr const char *kBaselineCondition = "Baseline";
inline constexpr const char *kInteractionMetric = "Interaction Count";

// Inputs are session logs (*.jsonl), study CSVs (*.csv), or directories,
// which contribute every *.jsonl inside. Each log is strictly parsed and
// restored; its recounted interactions become one "Interaction Count"
// sample for its mode. Errors name the file and line. No inputs at all is a
// validation error.
Analysis analyze(const std::vector<std::filesystem::path> &inputs,
                 TTestVariant variant = TTestVariant::Pooled);

// report.txt, report.json and sessions.csv under `out_dir`.
void write_analysis(const Analysis &a, const std::filesystem::path &out_dir);

} // namespace clay
