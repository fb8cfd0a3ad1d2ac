#include "clay/analytics/report.hpp"

#include "clay/analytics/surveys.hpp"
#include "clay/common/error.hpp"

#include <boost/tokenizer.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

namespace clay {

using nlohmann::json;

const std::vector<MetricInfo> &metric_registry() {
  static const std::vector<MetricInfo> registry = {
      {"Effective", "ux", ""},
      {"Productive", "ux", ""},
      {"Useful", "ux", ""},
      {"Control Activities", "ux", ""},
      {"Accomplish Easier", "ux", ""},
      {"Save Time", "ux", ""},
      {"Meet Needs", "ux", ""},
      {"De Expected", "ux", ""},
      {"Match Goal", "ux", "self-perceived experience using the AI system"},
      {"Think Through", "ux", "self-perceived experience using the AI system"},
      {"Transparent", "ux", "self-perceived experience using the AI system"},
      {"Controllable", "ux", "self-perceived experience using the AI system"},
      {"Collaborative", "ux", "self-perceived experience using the AI system"},
      {"Interaction Count", "ux", ""},
      {"TLX Score", "workload", "NASA-TLX"},
      {"TLX Mental", "workload", "NASA-TLX"},
      {"TLX Physical", "workload", "NASA-TLX"},
      {"TLX Temporal", "workload", "NASA-TLX"},
      {"TLX Effort", "workload", "NASA-TLX"},
      {"TLX Performance", "workload", "NASA-TLX"},
      {"TLX Frustration", "workload", "NASA-TLX"},
      {"CSI Score", "creativity", "Creativity Support Index"},
      {"CSI Enjoyment", "creativity", "Creativity Support Index"},
      {"CSI Exploration", "creativity", "Creativity Support Index"},
      {"CSI Expressiveness", "creativity", "Creativity Support Index"},
      {"CSI Immersion", "creativity", "Creativity Support Index"},
      {"CSI Results Worth Effort", "creativity", "Creativity Support Index"},
      {"CSI Collaboration", "creativity", "Creativity Support Index"},
  };
  return registry;
}

const MetricInfo *find_metric(std::string_view id) {
  for (const auto &m : metric_registry())
    if (m.id == id)
      return &m;
  return nullptr;
}

namespace {

void remember(std::vector<std::string> &order, const std::string &v) {
  if (std::find(order.begin(), order.end(), v) == order.end())
    order.push_back(v);
}

std::string lower(std::string s) {
  for (auto &c : s)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

double parse_number(const std::string &s) {
  return to_double(parse_rational(s));
}

} // namespace

void StudyData::add_sample(const std::string &metric,
                           const std::string &condition, double value) {
  if (metric.empty() || condition.empty())
    throw validation_error("metric and condition must be non-empty");
  remember(metrics, metric);
  remember(conditions, condition);
  samples[{condition, metric}].push_back(value);
}

void StudyData::add_summary(const std::string &metric,
                            const std::string &condition, const SummaryStat &s) {
  if (metric.empty() || condition.empty())
    throw validation_error("metric and condition must be non-empty");
  validate(s);
  if (!summaries.emplace(std::make_pair(condition, metric), s).second)
    throw validation_error("duplicate summary for " + metric + " / " +
                           condition);
  remember(metrics, metric);
  remember(conditions, condition);
}

std::optional<SummaryStat> StudyData::summary(const std::string &metric,
                                              const std::string &condition) const {
  if (auto it = samples.find({condition, metric}); it != samples.end())
    return summarize(it->second);
  if (auto it = summaries.find({condition, metric}); it != summaries.end())
    return it->second;
  return std::nullopt;
}

void read_study_csv(std::istream &in, std::string_view source, StudyData &out) {
  using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
  std::string line;
  std::size_t number = 0;
  enum { Unknown, Samples, Summaries } kind = Unknown;
  std::set<std::tuple<std::string, std::string, std::string>> participants;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos)
      continue;
    std::vector<std::string> cells;
    try {
      Tokenizer tok(line);
      for (auto &c : tok) {
        const auto b = c.find_first_not_of(" \t");
        const auto e = c.find_last_not_of(" \t");
        cells.push_back(b == std::string::npos ? "" : c.substr(b, e - b + 1));
      }
    } catch (const boost::escaped_list_error &e) {
      throw validation_error(std::string(source) + ":" + std::to_string(number) +
                             ": " + e.what());
    }
    auto where = [&] {
      return std::string(source) + ":" + std::to_string(number) + ": ";
    };
    if (kind == Unknown) {
      std::vector<std::string> h;
      for (auto &c : cells)
        h.push_back(lower(c));
      if (h == std::vector<std::string>{"metric", "condition", "participant", "value"})
        kind = Samples;
      else if (h == std::vector<std::string>{"metric", "condition", "mean", "std", "n"})
        kind = Summaries;
      else
        throw validation_error(
            where() + "expected header metric,condition,participant,value or "
                      "metric,condition,mean,std,n");
      continue;
    }
    const std::size_t want = kind == Samples ? 4 : 5;
    if (cells.size() != want)
      throw validation_error(where() + "expected " + std::to_string(want) +
                             " fields, got " + std::to_string(cells.size()));
    try {
      if (kind == Samples) {
        if (!participants.insert({cells[0], cells[1], cells[2]}).second)
          throw validation_error("duplicate participant '" + cells[2] + "'");
        out.add_sample(cells[0], cells[1], parse_number(cells[3]));
      } else {
        SummaryStat s{parse_number(cells[2]), parse_number(cells[3]), 0};
        const Rational n = parse_rational(cells[4]);
        if (n.denominator() != 1)
          throw validation_error("n must be an integer");
        s.n = static_cast<int>(n.numerator());
        out.add_summary(cells[0], cells[1], s);
      }
    } catch (const Error &e) {
      throw validation_error(where() + e.what());
    }
  }
  if (kind == Unknown)
    throw validation_error(std::string(source) + ": empty CSV");
}

StudyData read_study_csv_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw not_found_error("cannot open " + path);
  StudyData d;
  read_study_csv(in, path, d);
  return d;
}

Report build_report(const StudyData &data, std::optional<std::string> a,
                    std::optional<std::string> b, TTestVariant variant) {
  auto pick = [&](const char *name) -> std::optional<std::string> {
    for (const auto &c : data.conditions)
      if (lower(c) == name)
        return c;
    return std::nullopt;
  };
  if (!a)
    a = pick("clay");
  if (!b)
    b = pick("baseline");
  for (const auto &c : data.conditions) {
    if (!a && c != b)
      a = c;
    else if (!b && c != a)
      b = c;
  }
  if (!a || !b || *a == *b)
    throw validation_error("report needs two distinct conditions");
  for (const auto &c : {*a, *b})
    if (std::find(data.conditions.begin(), data.conditions.end(), c) ==
        data.conditions.end())
      throw validation_error("no data for condition '" + c + "'");

  std::vector<std::string> only_a, only_b, shared;
  for (const auto &m : data.metrics) {
    const bool in_a = data.summary(m, *a).has_value();
    const bool in_b = data.summary(m, *b).has_value();
    if (in_a && in_b)
      shared.push_back(m);
    else if (in_a)
      only_a.push_back(m);
    else if (in_b)
      only_b.push_back(m);
  }
  if (!only_a.empty() || !only_b.empty()) {
    std::string msg = "metric sets differ:";
    for (const auto &m : only_a)
      msg += "\n  '" + m + "' only in " + *a;
    for (const auto &m : only_b)
      msg += "\n  '" + m + "' only in " + *b;
    throw validation_error(msg);
  }
  if (shared.empty())
    throw validation_error("report has no metrics");

  std::stable_sort(shared.begin(), shared.end(),
                   [](const std::string &x, const std::string &y) {
                     auto rank = [](const std::string &m) {
                       const auto &reg = metric_registry();
                       for (std::size_t i = 0; i < reg.size(); ++i)
                         if (reg[i].id == m)
                           return i;
                       return reg.size();
                     };
                     return rank(x) < rank(y);
                   });

  Report r{*a, *b, variant, {}};
  for (const auto &m : shared) {
    ReportRow row;
    row.metric = m;
    if (const auto *info = find_metric(m))
      row.group = info->group;
    row.a = *data.summary(m, *a);
    row.b = *data.summary(m, *b);
    row.test = pooled_t_test(row.a, row.b, variant);
    r.rows.push_back(std::move(row));
  }
  return r;
}

namespace {

std::string fmt(const char *f, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string pad(const std::string &s, std::size_t w, bool right) {
  if (s.size() >= w)
    return s;
  return right ? std::string(w - s.size(), ' ') + s
               : s + std::string(w - s.size(), ' ');
}

} // namespace

std::string render_table(const Report &r) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"", "", r.condition_a + " mean", r.condition_a + " std",
                   r.condition_b + " mean", r.condition_b + " std", "t", "df",
                   "p", "Sig"});
  for (const auto &row : r.rows)
    cells.push_back({row.group, row.metric, fmt("%.2f", row.a.mean),
                     fmt("%.3f", row.a.std), fmt("%.2f", row.b.mean),
                     fmt("%.3f", row.b.std), fmt("%.3f", row.test.t),
                     fmt("%.1f", row.test.df), format_p(row.test.p_two_sided),
                     row.test.label});
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto &line : cells)
    for (std::size_t i = 0; i < line.size(); ++i)
      width[i] = std::max(width[i], line[i].size());
  std::string out;
  for (std::size_t l = 0; l < cells.size(); ++l) {
    std::string text;
    for (std::size_t i = 0; i < cells[l].size(); ++i) {
      if (i)
        text += "  ";
      text += pad(cells[l][i], width[i], i >= 2 && i <= 7);
    }
    while (!text.empty() && text.back() == ' ')
      text.pop_back();
    out += text + "\n";
    if (l == 0)
      out += std::string(text.size(), '-') + "\n";
  }
  out += r.variant == TTestVariant::Pooled
             ? "Two-sided pooled-variance t-test.\n"
             : "Two-sided Welch t-test.\n";
  out += "+ p<0.1  * p<0.05  ** p<0.01  *** p<0.001\n";
  return out;
}

json to_json(const Report &r) {
  json rows = json::array();
  for (const auto &row : r.rows)
    rows.push_back({{"metric", row.metric},
                    {"group", row.group},
                    {"n_a", row.a.n},
                    {"n_b", row.b.n},
                    {"mean_a", row.a.mean},
                    {"std_a", row.a.std},
                    {"mean_b", row.b.mean},
                    {"std_b", row.b.std},
                    {"t", row.test.t},
                    {"df", row.test.df},
                    {"p", row.test.p_two_sided},
                    {"label", row.test.label}});
  return {{"condition_a", r.condition_a},
          {"condition_b", r.condition_b},
          {"test", r.variant == TTestVariant::Pooled ? "pooled" : "welch"},
          {"rows", std::move(rows)}};
}

} // namespace clay
