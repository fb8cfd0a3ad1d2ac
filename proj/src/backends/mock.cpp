#include "clay/backends/mock.hpp"

#include "clay/common/error.hpp"
#include "clay/common/rng.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace clay {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
std::vector<T> sample(const std::vector<T> &items, int want,
                      DeterministicRng &rng) {
  const std::size_t k =
      std::min(items.size(), static_cast<std::size_t>(std::max(want, 1)));
  std::vector<T> out;
  for (auto i : rng.sample_indices(items.size(), k))
    out.push_back(items[i]);
  return out;
}

} // namespace

KeywordLists mock_extract_keywords(std::string_view text, const Taxonomy &t) {
  const std::string hay = lowercase(text);
  KeywordLists out;
  std::set<std::string> moods;
  for (const auto &style : t.tree.styles) {
    if (hay.find(lowercase(style.name)) != std::string::npos)
      out.styles.push_back(style.name);
    for (const auto &m : style.moods)
      if (hay.find(lowercase(m)) != std::string::npos &&
          moods.insert(lowercase(m)).second)
        out.moods.push_back(m);
  }
  if (out.styles.empty() && out.moods.empty())
    out.styles.push_back(trim(text));
  return out;
}

StyleHierarchy mock_generate_hierarchy(const KeywordLists &keywords,
                                       const Taxonomy &t, std::uint64_t seed,
                                       const HierarchyCardinality &cardinality) {
  std::set<std::size_t> chosen;
  for (const auto &s : keywords.styles)
    for (auto i : match_styles(t, s))
      chosen.insert(i);
  if (chosen.empty())
    for (std::size_t i = 0; i < t.tree.styles.size(); ++i)
      for (const auto &m : t.tree.styles[i].moods)
        for (const auto &want : keywords.moods)
          if (lowercase(m) == lowercase(trim(want)))
            chosen.insert(i);
  if (chosen.empty()) {
    std::string known;
    for (const auto &s : t.tree.styles)
      known += (known.empty() ? "" : ", ") + s.name;
    std::string asked;
    for (const auto &s : keywords.styles)
      asked += (asked.empty() ? "'" : ", '") + s + "'";
    throw validation_error("unknown style " + (asked.empty() ? "(none)" : asked) +
                           "; known styles: " + known);
  }

  DeterministicRng rng(
      derive_seed({"mock-hierarchy", t.digest, std::to_string(seed)}));
  StyleHierarchy h;
  for (auto i : chosen) {
    const StyleNode &src = t.tree.styles[i];
    StyleNode style{src.name, src.moods, {}};
    for (const auto &sub : sample(src.sub_styles, cardinality.sub_styles_per_style, rng)) {
      SubStyleNode node{sub.name, {}};
      for (const auto &el :
           sample(sub.elements, cardinality.elements_per_sub_style, rng))
        node.elements.push_back(
            {el.category,
             sample(el.sub_elements, cardinality.sub_elements_per_element, rng)});
      style.sub_styles.push_back(std::move(node));
    }
    h.styles.push_back(std::move(style));
  }
  return h;
}

ElementSuggestions mock_caption(const MoodboardSource &moodboard,
                                const Taxonomy &t) {
  std::set<std::string> wanted;
  for (const auto &k : moodboard.keywords)
    wanted.insert(lowercase(trim(k)));

  ElementSuggestions out;
  auto merge = [&](const ElementNode &el) {
    auto it = std::find_if(out.elements.begin(), out.elements.end(),
                           [&](const auto &e) { return e.category == el.category; });
    if (it == out.elements.end()) {
      out.elements.push_back({el.category, {}});
      it = std::prev(out.elements.end());
    }
    for (const auto &s : el.sub_elements)
      if (std::find(it->sub_elements.begin(), it->sub_elements.end(), s) ==
          it->sub_elements.end())
        it->sub_elements.push_back(s);
  };

  for (const auto &style : t.tree.styles)
    for (const auto &sub : style.sub_styles) {
      bool hit = wanted.count(lowercase(sub.name)) > 0;
      for (const auto &el : sub.elements)
        for (const auto &s : el.sub_elements)
          hit = hit || wanted.count(lowercase(s)) > 0;
      if (hit)
        for (const auto &el : sub.elements)
          merge(el);
    }

  if (out.elements.empty()) {
    ElementNode detail{"detail", {}};
    for (const auto &k : moodboard.keywords)
      if (!trim(k).empty())
        detail.sub_elements.push_back(trim(k));
    if (detail.sub_elements.empty())
      detail.sub_elements.push_back(trim(moodboard.prompt_text));
    merge(detail);
  }
  return out;
}

MockChatModel::MockChatModel(std::shared_ptr<const Taxonomy> taxonomy)
    : taxonomy_(std::move(taxonomy)) {
  if (!taxonomy_)
    throw configuration_error("mock chat model needs a taxonomy");
}

std::string MockChatModel::complete(const ChatRequest &request) {
  switch (request.task) {
  case ChatTask::KeywordExtraction: {
    const auto k = mock_extract_keywords(request.user_content, *taxonomy_);
    return json{{"styles", k.styles}, {"moods", k.moods}}.dump();
  }
  case ChatTask::HierarchyGeneration: {
    const json in = json::parse(request.user_content);
    KeywordLists k{in.value("styles", std::vector<std::string>{}),
                   in.value("moods", std::vector<std::string>{})};
    HierarchyCardinality c;
    if (in.contains("cardinality")) {
      const auto &jc = in.at("cardinality");
      c.sub_styles_per_style = jc.value("sub_styles_per_style", c.sub_styles_per_style);
      c.elements_per_sub_style =
          jc.value("elements_per_sub_style", c.elements_per_sub_style);
      c.sub_elements_per_element =
          jc.value("sub_elements_per_element", c.sub_elements_per_element);
    }
    return to_json(mock_generate_hierarchy(k, *taxonomy_,
                                           request.seed.value_or(0), c))
        .dump();
  }
  case ChatTask::Captioning: {
    const json in = json::parse(request.user_content);
    MoodboardSource src;
    src.artifact_id = in.value("moodboard", "");
    src.style_seed = in.value("style", "");
    src.prompt_text = in.value("prompt", "");
    src.keywords = in.value("keywords", std::vector<std::string>{});
    json elements = json::array();
    for (const auto &e : mock_caption(src, *taxonomy_).elements)
      elements.push_back({{"category", e.category}, {"sub_elements", e.sub_elements}});
    return json{{"elements", std::move(elements)}}.dump();
  }
  }
  throw validation_error("unknown chat task");
}

} // namespace clay
