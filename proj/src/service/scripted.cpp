#include "clay/service/scripted.hpp"

#include "clay/backends/taxonomy.hpp"
#include "clay/common/error.hpp"
#include "clay/common/rng.hpp"
#include "clay/core/engine.hpp"
#include "clay/core/session_log.hpp"

#include <array>

namespace clay {

std::string_view to_string(PolicyKind k) noexcept {
  switch (k) {
  case PolicyKind::Explorer:
    return "explorer";
  case PolicyKind::Converger:
    return "converger";
  case PolicyKind::BaselineFree:
    return "baseline_free";
  }
  return "converger";
}

std::optional<PolicyKind> parse_policy(std::string_view s) noexcept {
  for (auto k : {PolicyKind::Explorer, PolicyKind::Converger,
                 PolicyKind::BaselineFree})
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

SessionMode policy_mode(PolicyKind k) noexcept {
  return k == PolicyKind::BaselineFree ? SessionMode::Baseline
                                       : SessionMode::Clay;
}

int expected_interactions(const ScriptPolicy &p) {
  switch (p.kind) {
  case PolicyKind::Converger:
    return p.k + p.k2 + 2;
  case PolicyKind::Explorer:
    return p.k + p.k2 + 4;
  case PolicyKind::BaselineFree:
    return p.n;
  }
  return 0;
}

void validate(const ScriptPolicy &p) {
  if (p.k2 < 0)
    throw validation_error("design cycles must be >= 0");
  switch (p.kind) {
  case PolicyKind::Converger:
    if (p.k < 1)
      throw validation_error("converger needs at least one moodboard cycle");
    break;
  case PolicyKind::Explorer:
    if (p.k < 2)
      throw validation_error("explorer needs at least two moodboard cycles");
    break;
  case PolicyKind::BaselineFree:
    if (p.n < 1)
      throw validation_error("baseline policy needs at least one prompt");
    break;
  }
}

namespace {

constexpr std::array<std::string_view, 4> kOpenings = {
    "something", "an outfit that feels", "a look that is", "clothes that are"};

std::vector<HierarchyPath> leaf_paths(const StyleHierarchy &h) {
  std::vector<HierarchyPath> out;
  for (std::size_t i = 0; i < h.styles.size(); ++i)
    for (std::size_t j = 0; j < h.styles[i].sub_styles.size(); ++j) {
      const auto &sub = h.styles[i].sub_styles[j];
      for (std::size_t e = 0; e < sub.elements.size(); ++e)
        for (std::size_t l = 0; l < sub.elements[e].sub_elements.size(); ++l)
          out.push_back(HierarchyPath{{i, j, e, l}});
    }
  return out;
}

class Script {
public:
  Script(const WorkflowEngine &engine, Session &s, std::uint64_t seed)
      : engine_(engine), s_(s), rng_(derive_seed({"script", std::to_string(seed)})) {}

  std::string vague_text() {
    return std::string(kOpenings[rng_.index(kOpenings.size())]) + " " +
           s_.style_seed;
  }

  void cycle(const std::vector<std::string> &new_keywords = {}) {
    const auto leaves = leaf_paths(*s_.hierarchy);
    std::vector<HierarchyPath> paths{leaves[rng_.index(leaves.size())]};
    if (s_.keyword_draft.empty())
      paths.insert(paths.begin(),
                   HierarchyPath{{paths.front().indices[0],
                                  paths.front().indices[1]}});
    auto draft = engine_.select_keywords(s_, paths, new_keywords);
    engine_.refine_prompt(s_, std::move(draft), std::nullopt);
    engine_.generate_combination(s_);
  }

  void advance() {
    engine_.advance_stage(s_, s_.artifacts.back().id);
  }

  DeterministicRng &rng() { return rng_; }

private:
  const WorkflowEngine &engine_;
  Session &s_;
  DeterministicRng rng_;
};

} // namespace

ScriptedRun run_scripted_session(const BackendSet &backends,
                                 const WorkflowConfig &config,
                                 const ScriptPolicy &policy, std::uint64_t seed,
                                 std::optional<SessionMode> mode,
                                 std::optional<std::string> style) {
  validate(policy);
  if (mode && *mode != policy_mode(policy.kind))
    throw validation_error("policy " + std::string(to_string(policy.kind)) +
                           " cannot run a " + std::string(to_string(*mode)) +
                           " session");
  const Timestamp start{std::chrono::milliseconds(1704067200000LL)};
  WorkflowEngine engine(backends, config, LogicalClock(start));
  if (!style) {
    const auto pick = derive_seed({"scripted-style", std::to_string(seed)});
    style = std::string(kStudyStyles[pick % kStudyStyles.size()]);
  }
  Session s = engine.create_session(policy_mode(policy.kind), *style, seed);
  Script script(engine, s, seed);

  switch (policy.kind) {
  case PolicyKind::Converger:
    engine.submit_vague_prompt(s, script.vague_text());
    engine.view_hierarchy(s);
    for (int i = 0; i < policy.k; ++i)
      script.cycle();
    script.advance();
    engine.view_hierarchy(s);
    for (int i = 0; i < policy.k2; ++i)
      script.cycle();
    break;

  case PolicyKind::Explorer:
    engine.submit_vague_prompt(s, script.vague_text());
    engine.view_hierarchy(s);
    script.cycle();
    engine.refine_prompt(s, s.current_prompt->keywords, std::nullopt);
    engine.submit_vague_prompt(s, script.vague_text() + ", but different");
    engine.view_hierarchy(s);
    for (int i = 1; i < policy.k; ++i)
      script.cycle();
    engine.modify_composition(s, script.rng().chance(0.5)
                                     ? CompositionDirective::ReduceTileCount
                                     : CompositionDirective::IncreaseFashionRatio);
    script.advance();
    engine.view_hierarchy(s);
    for (int i = 0; i < policy.k2; ++i)
      script.cycle(i == 0 ? std::vector<std::string>{"active skirt"}
                          : std::vector<std::string>{});
    break;

  case PolicyKind::BaselineFree: {
    const int first = (policy.n + 1) / 2;
    for (int i = 0; i < policy.n; ++i) {
      if (i == first)
        script.advance();
      engine.submit_vague_prompt(s, script.vague_text() + " #" +
                                        std::to_string(i + 1));
    }
    if (first == policy.n)
      script.advance();
    break;
  }
  }
  std::string log = serialize_log(s, config);
  return ScriptedRun{std::move(s), std::move(log)};
}

} // namespace clay
