#include "clay/service/analyze.hpp"

#include "clay/common/error.hpp"
#include "clay/core/session_log.hpp"

#include <algorithm>
#include <fstream>

namespace clay {

namespace fs = std::filesystem;

namespace {

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out.flush())
    throw configuration_error("cannot write " + path.string());
}

} // namespace

Analysis analyze(const std::vector<fs::path> &inputs, TTestVariant variant) {
  std::vector<fs::path> logs;
  std::vector<fs::path> csvs;
  for (const auto &in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto &e : fs::directory_iterator(in))
        if (e.is_regular_file() && e.path().extension() == ".jsonl")
          found.push_back(e.path());
      std::sort(found.begin(), found.end());
      logs.insert(logs.end(), found.begin(), found.end());
    } else if (!fs::exists(in)) {
      throw validation_error("no such input: " + in.string());
    } else if (in.extension() == ".csv") {
      csvs.push_back(in);
    } else {
      logs.push_back(in);
    }
  }
  if (logs.empty() && csvs.empty())
    throw validation_error("analyze: no session logs or study CSVs given");

  Analysis a;
  for (const auto &path : csvs) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw validation_error("cannot read " + path.string());
    read_study_csv(in, path.string(), a.data);
  }
  for (const auto &path : logs) {
    const ParsedLog log = read_log_file(path.string());
    Session s;
    try {
      s = restore_session(log);
    } catch (const Error &e) {
      throw validation_error(path.string() + ": " + e.what());
    }
    SessionCount c;
    c.source = path.string();
    c.session_id = s.id;
    c.mode = s.mode;
    c.style_seed = s.style_seed;
    c.events = static_cast<int>(s.events.size());
    c.interaction_count = interaction_count(s.events);
    c.artifacts = static_cast<int>(s.artifacts.size());
    a.data.add_sample(kInteractionMetric,
                      s.mode == SessionMode::Clay ? kClayCondition
                                                  : kBaselineCondition,
                      c.interaction_count);
    a.sessions.push_back(std::move(c));
  }
  a.report = build_report(a.data, std::nullopt, std::nullopt, variant);
  return a;
}

void write_analysis(const Analysis &a, const fs::path &out_dir) {
  fs::create_directories(out_dir);
  write_file(out_dir / "report.txt", render_table(a.report));
  write_file(out_dir / "report.json", to_json(a.report).dump(2) + "\n");
  std::string csv = "session_id,mode,style,events,interaction_count,artifacts\n";
  for (const auto &s : a.sessions)
    csv += csv_field(s.session_id) + "," + std::string(to_string(s.mode)) + "," +
           csv_field(s.style_seed) + "," + std::to_string(s.events) + "," +
           std::to_string(s.interaction_count) + "," +
           std::to_string(s.artifacts) + "\n";
  write_file(out_dir / "sessions.csv", csv);
}

} // namespace clay
