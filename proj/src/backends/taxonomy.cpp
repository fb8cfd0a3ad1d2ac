#include "clay/backends/taxonomy.hpp"

#include "clay/common/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace clay::data {
std::string_view taxonomy_json();
}

namespace clay {

using nlohmann::json;

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::vector<std::string> taxonomy_problems(const Taxonomy &t) {
  std::vector<std::string> out = structural_problems(t.tree);
  if (t.version.empty())
    out.push_back("taxonomy has no version");
  for (auto study : kStudyStyles) {
    const bool present =
        std::any_of(t.tree.styles.begin(), t.tree.styles.end(),
                    [&](const StyleNode &s) { return lowercase(s.name) == study; });
    if (!present)
      out.push_back("taxonomy lacks study style '" + std::string(study) + "'");
  }
  return out;
}

Taxonomy parse_taxonomy(std::string_view text, std::string_view source) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw configuration_error(std::string(source) +
                              ": taxonomy is not a JSON object");
  Taxonomy t;
  try {
    if (!j.contains("version") || !j.at("version").is_string())
      throw validation_error("missing string 'version'");
    t.version = j.at("version").get<std::string>();
    t.tree = hierarchy_from_json(j);
  } catch (const Error &e) {
    throw configuration_error(std::string(source) + ": " + e.what());
  }
  const auto problems = taxonomy_problems(t);
  if (!problems.empty()) {
    std::string msg = std::string(source) + ": invalid taxonomy:";
    for (const auto &p : problems)
      msg += "\n  " + p;
    throw configuration_error(msg);
  }
  t.digest = hierarchy_digest(t.tree);
  return t;
}

Taxonomy load_taxonomy_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw configuration_error("cannot read taxonomy " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_taxonomy(buf.str(), path);
}

const Taxonomy &bundled_taxonomy() {
  static const Taxonomy t = parse_taxonomy(data::taxonomy_json(), "bundled");
  return t;
}

std::vector<std::size_t> match_styles(const Taxonomy &t,
                                      std::string_view term) {
  const std::string needle = lowercase(term);
  std::vector<std::size_t> out;
  if (needle.empty())
    return out;
  for (std::size_t i = 0; i < t.tree.styles.size(); ++i) {
    const std::string name = lowercase(t.tree.styles[i].name);
    if (name.find(needle) != std::string::npos ||
        needle.find(name) != std::string::npos)
      out.push_back(i);
  }
  return out;
}

} // namespace clay
