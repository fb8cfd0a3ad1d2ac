#include "clay/core/engine.hpp"

#include "clay/common/error.hpp"
#include "clay/common/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace clay {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Backend adapters may throw anything; only clay::Error crosses this line.
template <typename Fn> auto call_backend(const char *what, Fn &&fn) {
  try {
    return fn();
  } catch (const Error &) {
    throw;
  } catch (const std::exception &e) {
    throw backend_error(std::string(what) + ": " + e.what());
  }
}

void require_clay(const Session &s, std::string_view op) {
  if (s.mode != SessionMode::Clay)
    throw validation_error(std::string(op) +
                           " is unsupported in baseline mode");
}

void require_phase(const Session &s, std::initializer_list<Phase> allowed,
                   std::string_view op) {
  if (std::find(allowed.begin(), allowed.end(), s.phase) != allowed.end())
    return;
  std::string names;
  for (auto p : allowed) {
    if (!names.empty())
      names += " or ";
    names += to_string(p);
  }
  throw illegal_transition_error(std::string(op) + " requires phase " + names +
                                 "; session is in " +
                                 std::string(to_string(s.phase)));
}

json keyword_lists_json(const KeywordLists &k) {
  return json{{"styles", k.styles}, {"moods", k.moods}};
}

json composition_json(const CompositionParams &c) {
  return json{{"count", c.count}, {"fashion_ratio", c.fashion_ratio}};
}

StyleHierarchy design_hierarchy(const Session &s, const std::string &moodboard,
                                const ElementSuggestions &suggestions) {
  SubStyleNode sub{"moodboard " + moodboard, {}};
  for (const auto &e : suggestions.elements)
    sub.elements.push_back({e.category, e.sub_elements});
  StyleHierarchy h;
  h.styles.push_back(StyleNode{s.style_seed, {}, {std::move(sub)}});
  return h;
}

} // namespace

std::string image_prompt(Stage stage, const RefinedPrompt &prompt,
                         const CompositionParams &composition) {
  const std::string body = prompt_text(prompt);
  if (stage == Stage::Design)
    return body + ". Fashion design illustration of a single garment look.";
  const int fashion = static_cast<int>(
      std::floor(composition.count * composition.fashion_ratio + 0.5));
  return body + ". Fashion moodboard collage of " +
         std::to_string(composition.count) + " images: " +
         std::to_string(fashion) + " of garments worn by models, " +
         std::to_string(composition.count - fashion) +
         " of objects, fabrics and textures.";
}

WorkflowEngine::WorkflowEngine(BackendSet backends, WorkflowConfig config,
                               Clock clock)
    : backends_(std::move(backends)), config_(std::move(config)),
      clock_(std::move(clock)) {
  validate(config_);
  if (!backends_.extractor || !backends_.hierarchy || !backends_.captioner ||
      !backends_.images)
    throw configuration_error("workflow engine needs all four backend ports");
}

Timestamp WorkflowEngine::stamp(const Session &s) const {
  const Timestamp now = clock_();
  if (!s.events.empty() && s.events.back().timestamp > now)
    return s.events.back().timestamp;
  return now;
}

void WorkflowEngine::commit(Session &s, EventKind kind, json payload) const {
  apply_event(s, make_event(stamp(s), s.id, kind, std::move(payload)));
}

Session WorkflowEngine::create_session(SessionMode mode,
                                       std::string_view style_seed,
                                       std::uint64_t rng_seed,
                                       std::string id) const {
  std::string style = trim(style_seed);
  if (style.empty())
    throw validation_error("style_seed must be non-empty");
  if (id.empty())
    id = "s" + hex64(derive_seed({to_string(mode), style,
                                  std::to_string(rng_seed)}));
  return initial_session(
      std::move(id), mode, std::move(style), rng_seed, clock_(),
      default_composition(Stage::Moodboard, config_.composition));
}

GenerationArtifact WorkflowEngine::synthesize(const Session &s,
                                              ArtifactKind kind,
                                              PromptSnapshot snapshot,
                                              CompositionParams composition)
    const {
  GenerationArtifact a;
  a.id = "a" + std::to_string(s.artifacts.size() + 1);
  a.kind = kind;
  a.stage = s.stage;
  a.composition = composition;
  a.seed_used = derive_seed({"image", std::to_string(s.rng_seed),
                             std::to_string(s.artifacts.size())});

  ImageRequest req;
  req.width = config_.image_width;
  req.height = config_.image_height;
  req.seed = a.seed_used;
  if (kind == ArtifactKind::BaselineImage) {
    req.prompt_text = std::get<std::string>(snapshot);
    req.count = 1;
  } else {
    const auto &prompt = std::get<RefinedPrompt>(snapshot);
    req.prompt_text = image_prompt(s.stage, prompt, composition);
    if (kind == ArtifactKind::MoodboardImage) {
      req.count = 1;
      CollageLayout layout{composition.count, composition.fashion_ratio, {}};
      for (const auto &k : prompt.keywords)
        layout.tile_keywords.push_back(k.text);
      req.collage = std::move(layout);
    } else {
      req.count = composition.count;
    }
  }
  a.prompt_snapshot = std::move(snapshot);
  a.image_refs = call_backend("image synthesis",
                              [&] { return backends_.images->synthesize(req); });
  if (a.image_refs.empty())
    throw backend_error("image synthesis returned no images");
  a.backend_id = backends_.images->backend_id();
  return a;
}

VagueResult WorkflowEngine::submit_vague_prompt(Session &s,
                                                std::string_view text) const {
  const std::string query = trim(text);
  if (query.empty())
    throw validation_error("vague prompt text must be non-empty");

  if (s.mode == SessionMode::Baseline) {
    require_phase(s, {Phase::VaguePrompt, Phase::CombinationResults},
                  "submit_vague_prompt");
    CompositionParams single{1, config_.composition.fashion_ratio};
    auto artifact = synthesize(s, ArtifactKind::BaselineImage, query, single);
    commit(s, EventKind::VaguePromptSubmitted,
           json{{"text", query}, {"artifact", to_json(artifact)}});
    return VagueResult{std::nullopt, std::move(artifact)};
  }

  require_phase(s, {Phase::VaguePrompt, Phase::PromptRefinement},
                "submit_vague_prompt");
  const bool restart = s.phase == Phase::PromptRefinement;
  const std::uint64_t seed = derive_seed(
      {"hierarchy", std::to_string(s.rng_seed), std::to_string(s.events.size())});
  const KeywordLists keywords = call_backend("keyword extraction", [&] {
    return backends_.extractor->extract_keywords(query, seed);
  });
  if (keywords.empty())
    throw backend_error("keyword extraction found no styles or moods");
  StyleHierarchy hierarchy = call_backend("hierarchy generation", [&] {
    return backends_.hierarchy->generate_hierarchy(keywords, seed);
  });
  require_well_formed(hierarchy);
  commit(s, EventKind::VaguePromptSubmitted,
         json{{"text", query},
              {"restart", restart},
              {"keywords", keyword_lists_json(keywords)},
              {"hierarchy", to_json(hierarchy)}});
  return VagueResult{std::move(hierarchy), std::nullopt};
}

const StyleHierarchy &WorkflowEngine::view_hierarchy(Session &s) const {
  require_clay(s, "view_hierarchy");
  if (!s.hierarchy)
    throw not_found_error("session has no hierarchy in phase " +
                          std::string(to_string(s.phase)));
  commit(s, EventKind::HierarchyViewed,
         json{{"hierarchy_digest", hierarchy_digest(*s.hierarchy)}});
  return *s.hierarchy;
}

std::vector<Keyword>
WorkflowEngine::select_keywords(Session &s, std::span<const HierarchyPath> paths,
                                std::span<const std::string> new_keywords)
    const {
  require_clay(s, "select_keywords");
  if (paths.empty() && new_keywords.empty())
    throw validation_error("select_keywords needs at least one path or keyword");
  require_phase(s, {Phase::HierarchicalResults, Phase::CombinationResults},
                "select_keywords");

  std::vector<Keyword> picked;
  std::string unresolved;
  for (const auto &path : paths) {
    const auto text = s.hierarchy ? node_text(*s.hierarchy, path) : std::nullopt;
    if (!text) {
      unresolved += (unresolved.empty() ? "" : ", ") + path.to_string();
      continue;
    }
    picked.push_back(Keyword::suggested(*text, path));
  }
  if (!unresolved.empty())
    throw validation_error("unresolvable hierarchy path(s): " + unresolved);
  for (const auto &raw : new_keywords) {
    auto text = trim(raw);
    if (text.empty())
      throw validation_error("new keywords must be non-empty");
    picked.push_back(Keyword::user(std::move(text)));
  }

  std::set<std::string> seen;
  for (const auto &k : s.keyword_draft)
    seen.insert(k.text);
  std::vector<Keyword> added;
  for (auto &k : picked)
    if (seen.insert(k.text).second)
      added.push_back(std::move(k));

  for (const auto &k : added)
    commit(s, EventKind::KeywordSelected, json{{"keyword", to_json(k)}});
  return s.keyword_draft;
}

RefinedPrompt WorkflowEngine::refine_prompt(Session &s,
                                            std::vector<Keyword> keywords,
                                            std::optional<std::string> free_text)
    const {
  require_clay(s, "refine_prompt");
  if (keywords.empty())
    throw validation_error("refine_prompt needs at least one keyword");
  require_phase(s,
                {Phase::HierarchicalResults, Phase::PromptRefinement,
                 Phase::CombinationResults},
                "refine_prompt");

  RefinedPrompt prompt;
  std::set<std::string> seen;
  for (auto &k : keywords) {
    k.text = trim(k.text);
    if (k.text.empty())
      throw validation_error("keywords must be non-empty");
    if (k.path.has_value() != (k.origin == KeywordOrigin::HierarchySuggested))
      throw validation_error("keyword '" + k.text +
                             "': hierarchy path must be present iff the "
                             "keyword is hierarchy-suggested");
    if (k.path) {
      const auto text =
          s.hierarchy ? node_text(*s.hierarchy, *k.path) : std::nullopt;
      if (!text)
        throw validation_error("unresolvable hierarchy path: " +
                               k.path->to_string());
      if (*text != k.text)
        throw validation_error("keyword '" + k.text + "' does not match node '" +
                               *text + "' at " + k.path->to_string());
    }
    if (seen.insert(k.text).second)
      prompt.keywords.push_back(std::move(k));
  }
  if (free_text) {
    auto t = trim(*free_text);
    if (!t.empty())
      prompt.free_text = std::move(t);
  }
  prompt.revision = s.last_revision + 1;
  prompt.specificity = specificity_score(prompt);
  commit(s, EventKind::PromptRefined, json{{"prompt", to_json(prompt)}});
  return prompt;
}

GenerationArtifact WorkflowEngine::generate_combination(Session &s) const {
  require_clay(s, "generate_combination");
  require_phase(s, {Phase::PromptRefinement}, "generate_combination");
  if (!s.current_prompt)
    throw validation_error("no refined prompt to generate from");
  const auto kind = s.stage == Stage::Moodboard ? ArtifactKind::MoodboardImage
                                                : ArtifactKind::DesignImageSet;
  auto artifact = synthesize(s, kind, *s.current_prompt, s.composition);
  commit(s, EventKind::GenerationRequested,
         json{{"artifact", to_json(artifact)}});
  return artifact;
}

CompositionResult
WorkflowEngine::modify_composition(Session &s,
                                   CompositionDirective directive) const {
  require_clay(s, "modify_composition");
  require_phase(s, {Phase::CombinationResults}, "modify_composition");
  const GenerationArtifact *latest = nullptr;
  for (const auto &a : s.artifacts)
    if (a.stage == s.stage)
      latest = &a;
  if (!latest)
    throw validation_error("no artifact in the current stage to recompose");

  const auto outcome =
      apply_directive(s.composition, directive, config_.composition);
  auto artifact =
      synthesize(s, latest->kind, latest->prompt_snapshot, outcome.params);
  commit(s, EventKind::CompositionDirective,
         json{{"directive", to_string(directive)},
              {"clamped", outcome.clamped},
              {"composition", composition_json(outcome.params)},
              {"artifact", to_json(artifact)}});
  return CompositionResult{std::move(artifact), outcome.clamped};
}

void WorkflowEngine::advance_stage(Session &s,
                                   std::string_view moodboard_id) const {
  if (s.stage != Stage::Moodboard)
    throw illegal_transition_error(
        "advance_stage: session is already in the design stage");
  if (s.artifacts.empty())
    throw validation_error(
        "advance_stage requires at least one generated artifact");
  const GenerationArtifact *source = s.find_artifact(moodboard_id);
  if (!source)
    throw validation_error("advance_stage: no artifact '" +
                           std::string(moodboard_id) + "' in session");
  if (s.mode == SessionMode::Clay &&
      source->kind != ArtifactKind::MoodboardImage)
    throw validation_error("advance_stage: artifact '" + source->id +
                           "' is not a moodboard");

  const json stage_payload{
      {"from", to_string(Stage::Moodboard)},
      {"to", to_string(Stage::Design)},
      {"source_artifact", source->id},
      {"composition", composition_json(default_composition(
                          Stage::Design, config_.composition))}};

  if (s.mode == SessionMode::Baseline) {
    commit(s, EventKind::StageAdvanced, stage_payload);
    return;
  }

  MoodboardSource src;
  src.artifact_id = source->id;
  src.image_ref = source->image_refs.front();
  src.prompt_text = snapshot_text(source->prompt_snapshot);
  if (const auto *p = std::get_if<RefinedPrompt>(&source->prompt_snapshot))
    for (const auto &k : p->keywords)
      src.keywords.push_back(k.text);
  src.style_seed = s.style_seed;
  const std::uint64_t seed = derive_seed(
      {"caption", std::to_string(s.rng_seed), std::to_string(s.events.size())});
  const ElementSuggestions suggestions = call_backend(
      "captioning", [&] { return backends_.captioner->caption(src, seed); });
  if (suggestions.elements.empty())
    throw backend_error("captioner suggested no fashion elements");
  StyleHierarchy hierarchy = design_hierarchy(s, source->id, suggestions);
  require_well_formed(hierarchy);

  json suggestion_json = json::array();
  for (const auto &e : suggestions.elements)
    suggestion_json.push_back(
        {{"category", e.category}, {"sub_elements", e.sub_elements}});
  const std::string source_id = source->id;
  commit(s, EventKind::StageAdvanced, stage_payload);
  commit(s, EventKind::VaguePromptSubmitted,
         json{{"source_artifact", source_id},
              {"restart", false},
              {"suggestions", std::move(suggestion_json)},
              {"hierarchy", to_json(hierarchy)}});
}

void WorkflowEngine::advance_phase(Session &s, Phase to) const {
  const Phase from = s.phase;
  transition(s, to);
  if (s.mode == SessionMode::Clay && from == Phase::PromptRefinement &&
      to == Phase::VaguePrompt) {
    s.hierarchy.reset();
    s.current_prompt.reset();
    s.keyword_draft.clear();
  }
}

} // namespace clay
