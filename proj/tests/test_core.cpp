#include "doctest.h"
#include "support.hpp"

#include "clay/common/digest.hpp"
#include "clay/common/error.hpp"
#include "clay/core/invariants.hpp"
#include "clay/core/session_log.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

using namespace clay;
using clay::test::Harness;

namespace {

std::vector<std::string> sub_style_names(const StyleHierarchy &h) {
  std::vector<std::string> out;
  for (const auto &s : h.styles)
    for (const auto &sub : s.sub_styles)
      out.push_back(sub.name);
  return out;
}

bool contains(const std::vector<std::string> &v, const std::string &x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

HierarchyPath path_of(const Session &s, const std::string &text) {
  REQUIRE(s.hierarchy);
  auto p = find_text(*s.hierarchy, text);
  REQUIRE_MESSAGE(p, text);
  return *p;
}

ErrorCode code_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::configuration;
}

// Athleisure moodboard ready for refinement: vague prompt, sub-style and two
// sub-elements selected, prompt refined, one moodboard generated.
Session athleisure_moodboard(Harness &h) {
  Session s = h.engine.create_session(SessionMode::Clay, "athleisure", 42);
  h.engine.submit_vague_prompt(
      s, "create a moodboard for an athleisure casual look suitable for a resort");
  const std::vector<HierarchyPath> paths{
      path_of(s, "Summer Breeze Athleisure"),
      path_of(s, "pastel tones of blue, pink, and white"),
      path_of(s, "breathable mesh")};
  auto draft = h.engine.select_keywords(s, paths, {});
  h.engine.refine_prompt(s, draft, std::nullopt);
  h.engine.generate_combination(s);
  return s;
}

} // namespace

TEST_SUITE("core") {

TEST_CASE("phase graph edges") {
  using P = Phase;
  const auto clay = SessionMode::Clay;
  CHECK(is_permitted_transition(clay, P::VaguePrompt, P::HierarchicalResults));
  CHECK(is_permitted_transition(clay, P::HierarchicalResults, P::PromptRefinement));
  CHECK(is_permitted_transition(clay, P::PromptRefinement, P::CombinationResults));
  CHECK(is_permitted_transition(clay, P::CombinationResults, P::PromptRefinement));
  CHECK(is_permitted_transition(clay, P::PromptRefinement, P::VaguePrompt));
  CHECK_FALSE(is_permitted_transition(clay, P::VaguePrompt, P::CombinationResults));
  CHECK_FALSE(is_permitted_transition(clay, P::CombinationResults, P::VaguePrompt));
  const auto base = SessionMode::Baseline;
  CHECK(is_permitted_transition(base, P::VaguePrompt, P::CombinationResults));
  CHECK(is_permitted_transition(base, P::CombinationResults, P::VaguePrompt));
  CHECK_FALSE(is_permitted_transition(base, P::VaguePrompt, P::HierarchicalResults));
  int clay_edges = 0, base_edges = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      clay_edges += is_permitted_transition(clay, P(a), P(b));
      base_edges += is_permitted_transition(base, P(a), P(b));
    }
  CHECK(clay_edges == 5);
  CHECK(base_edges == 2);
}

TEST_CASE("create_session") {
  Harness h;
  const Session s = h.engine.create_session(SessionMode::Clay, "feminine", 42);
  CHECK(s.phase == Phase::VaguePrompt);
  CHECK(s.stage == Stage::Moodboard);
  CHECK(s.events.empty());
  CHECK(s.artifacts.empty());
  CHECK(s.composition.count == 6);
  const Session b = h.engine.create_session(SessionMode::Baseline, "vintage", 7);
  CHECK_FALSE(b.hierarchy);
  CHECK(code_of([&] { h.engine.create_session(SessionMode::Clay, "", 1); }) ==
        ErrorCode::validation);
  CHECK(code_of([&] { h.engine.create_session(SessionMode::Clay, "  ", 1); }) ==
        ErrorCode::validation);
}

TEST_CASE("submit_vague_prompt") {
  Harness h;
  SUBCASE("athleisure resort prompt yields Summer Breeze Athleisure") {
    Session s = h.engine.create_session(SessionMode::Clay, "athleisure", 1);
    const auto r = h.engine.submit_vague_prompt(
        s, "create a moodboard for an athleisure casual look suitable for a resort");
    REQUIRE(r.hierarchy);
    CHECK_FALSE(r.artifact);
    CHECK(contains(sub_style_names(*r.hierarchy), "Summer Breeze Athleisure"));
    CHECK(s.phase == Phase::HierarchicalResults);
    REQUIRE(s.events.size() == 1);
    CHECK(s.events[0].kind == EventKind::VaguePromptSubmitted);
    CHECK(s.events[0].counts_as_interaction);
  }
  SUBCASE("vintage yields vintage granny and romantic vintage") {
    Session s = h.engine.create_session(SessionMode::Clay, "vintage", 42);
    const auto r = h.engine.submit_vague_prompt(s, "vintage");
    const auto names = sub_style_names(*r.hierarchy);
    CHECK(contains(names, "vintage granny"));
    CHECK(contains(names, "romantic vintage"));
  }
  SUBCASE("baseline sends the text straight to image synthesis") {
    Session s = h.engine.create_session(SessionMode::Baseline, "y2k", 3);
    const auto r = h.engine.submit_vague_prompt(s, "bold Y2K accessory moodboard");
    REQUIRE(r.artifact);
    CHECK_FALSE(r.hierarchy);
    CHECK(r.artifact->kind == ArtifactKind::BaselineImage);
    CHECK(std::get<std::string>(r.artifact->prompt_snapshot) ==
          "bold Y2K accessory moodboard");
    CHECK(s.phase == Phase::CombinationResults);
    CHECK_FALSE(s.hierarchy);
  }
  SUBCASE("empty text") {
    Session s = h.engine.create_session(SessionMode::Clay, "chic", 3);
    CHECK(code_of([&] { h.engine.submit_vague_prompt(s, " "); }) ==
          ErrorCode::validation);
    CHECK(s.events.empty());
  }
  SUBCASE("unknown style is rejected and leaves the session alone") {
    Session s = h.engine.create_session(SessionMode::Clay, "chic", 3);
    const Session before = s;
    try {
      h.engine.submit_vague_prompt(s, "zzz-unknown");
      FAIL("expected an error");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::validation);
      CHECK(std::string(e.what()).find("known styles") != std::string::npos);
    }
    CHECK(s.events == before.events);
    CHECK(s.phase == before.phase);
  }
}

TEST_CASE("select_keywords") {
  Harness h;
  Session s = h.engine.create_session(SessionMode::Clay, "athleisure", 1);
  h.engine.submit_vague_prompt(s, "athleisure for a resort");
  const std::vector<HierarchyPath> paths{
      path_of(s, "pastel tones of blue, pink, and white"),
      path_of(s, "breathable mesh")};
  auto draft = h.engine.select_keywords(s, paths, {});
  REQUIRE(draft.size() == 2);
  for (const auto &k : draft) {
    CHECK(k.origin == KeywordOrigin::HierarchySuggested);
    CHECK(k.path);
  }
  CHECK(s.events.back().kind == EventKind::KeywordSelected);
  CHECK_FALSE(s.events.back().counts_as_interaction);

  const std::vector<std::string> words{"active skirt"};
  draft = h.engine.select_keywords(s, {}, words);
  REQUIRE(draft.size() == 3);
  CHECK(draft[2].text == "active skirt");
  CHECK(draft[2].origin == KeywordOrigin::UserOriginated);
  CHECK_FALSE(draft[2].path);

  const auto events = s.events.size();
  draft = h.engine.select_keywords(s, paths, words);
  CHECK(draft.size() == 3);
  CHECK(s.events.size() == events);

  CHECK(code_of([&] { h.engine.select_keywords(s, {}, {}); }) ==
        ErrorCode::validation);
  const std::vector<HierarchyPath> bad{HierarchyPath{{9, 9}}};
  try {
    h.engine.select_keywords(s, bad, {});
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::validation);
    CHECK(std::string(e.what()).find("9/9") != std::string::npos);
  }
}

TEST_CASE("refine_prompt revisions") {
  Harness h;
  Session s = h.engine.create_session(SessionMode::Clay, "vintage", 5);
  h.engine.submit_vague_prompt(s, "vintage");
  const std::string olive = "olive green";
  const std::string faded = "vintage faded olive green";
  REQUIRE(find_text(*s.hierarchy, olive));
  const auto r1 = h.engine.refine_prompt(
      s, {Keyword::suggested(olive, path_of(s, olive))}, std::nullopt);
  CHECK(r1.revision == 1);
  CHECK(s.phase == Phase::PromptRefinement);
  const auto r2 = h.engine.refine_prompt(s, {Keyword::user(faded)}, std::nullopt);
  CHECK(r2.revision == 2);
  CHECK(r2.keywords.front().text == faded);
  const auto r3 = h.engine.refine_prompt(s, {Keyword::user(faded)}, std::nullopt);
  CHECK(r3.revision == 3);
  CHECK(r3.keywords == r2.keywords);
  CHECK(s.last_revision == 3);
  CHECK(s.events.back().kind == EventKind::PromptRefined);
  CHECK_FALSE(s.events.back().counts_as_interaction);

  CHECK(code_of([&] { h.engine.refine_prompt(s, {}, std::nullopt); }) ==
        ErrorCode::validation);
  CHECK(code_of([&] {
          h.engine.refine_prompt(s, {Keyword::suggested("pearl buttons", path_of(s, olive))},
                                 std::nullopt);
        }) == ErrorCode::validation);
}

TEST_CASE("pearl buttons then pearl decorations are distinct revisions") {
  Harness h;
  Session s = h.engine.create_session(SessionMode::Clay, "vintage", 5);
  h.engine.submit_vague_prompt(s, "vintage");
  const auto a = h.engine.refine_prompt(s, {Keyword::user("pearl buttons")}, std::nullopt);
  h.engine.generate_combination(s);
  const auto b =
      h.engine.refine_prompt(s, {Keyword::user("pearl decorations")}, std::nullopt);
  CHECK(b.revision == a.revision + 1);
  CHECK(b.keywords != a.keywords);
}

TEST_CASE("generate_combination and composition") {
  Harness h;
  Session s = athleisure_moodboard(h);
  REQUIRE(s.artifacts.size() == 1);
  const auto &mood = s.artifacts.back();
  CHECK(mood.kind == ArtifactKind::MoodboardImage);
  CHECK(mood.composition.count == 6);
  CHECK(mood.composition.fashion_ratio == 0.5);
  CHECK(s.phase == Phase::CombinationResults);
  CHECK(s.events.back().kind == EventKind::GenerationRequested);
  CHECK(s.events.back().counts_as_interaction);

  SUBCASE("same inputs give byte-identical images") {
    Harness other;
    Session t = athleisure_moodboard(other);
    CHECK(t.artifacts.back().image_refs == mood.image_refs);
    CHECK(*other.store->get(mood.image_refs[0]) == *h.store->get(mood.image_refs[0]));
  }
  SUBCASE("reduce tile count by two") {
    const auto r = h.engine.modify_composition(s, CompositionDirective::ReduceTileCount);
    CHECK(r.artifact.composition.count == 4);
    CHECK_FALSE(r.clamped);
    CHECK(s.events.back().kind == EventKind::CompositionDirective);
    CHECK(s.events.back().counts_as_interaction);
  }
  SUBCASE("fashion ratio rises by 0.25 and caps at 1") {
    auto r = h.engine.modify_composition(s, CompositionDirective::IncreaseFashionRatio);
    CHECK(r.artifact.composition.fashion_ratio == 0.75);
    r = h.engine.modify_composition(s, CompositionDirective::IncreaseFashionRatio);
    CHECK(r.artifact.composition.fashion_ratio == 1.0);
    CHECK_FALSE(r.clamped);
    r = h.engine.modify_composition(s, CompositionDirective::IncreaseFashionRatio);
    CHECK(r.artifact.composition.fashion_ratio == 1.0);
    CHECK(r.clamped);
  }
  SUBCASE("tile count clamps at 1") {
    CompositionResult r;
    for (int i = 0; i < 4; ++i)
      r = h.engine.modify_composition(s, CompositionDirective::ReduceTileCount);
    CHECK(r.artifact.composition.count == 1);
    CHECK(r.clamped);
  }
  SUBCASE("generation outside PromptRefinement is illegal") {
    CHECK(code_of([&] { h.engine.generate_combination(s); }) ==
          ErrorCode::illegal_transition);
  }
}

TEST_CASE("composition in baseline mode is rejected") {
  Harness h;
  Session s = h.engine.create_session(SessionMode::Baseline, "chic", 1);
  h.engine.submit_vague_prompt(s, "chic look");
  CHECK(code_of([&] {
          h.engine.modify_composition(s, CompositionDirective::ReduceTileCount);
        }) == ErrorCode::validation);
  CHECK(code_of([&] { h.engine.view_hierarchy(s); }) == ErrorCode::validation);
}

TEST_CASE("advance_stage") {
  Harness h;
  SUBCASE("clay captions the moodboard into design suggestions") {
    Session s = athleisure_moodboard(h);
    const std::string mood = s.artifacts.back().id;
    h.engine.advance_stage(s, mood);
    CHECK(s.stage == Stage::Design);
    CHECK(s.phase == Phase::HierarchicalResults);
    CHECK(s.source_moodboard == mood);
    CHECK(s.composition.count == 4);
    REQUIRE(s.hierarchy);
    CHECK(find_text(*s.hierarchy, "drawstring waist"));
    CHECK(find_text(*s.hierarchy, "thin straps"));
    CHECK(std::any_of(s.events.begin(), s.events.end(), [](const auto &e) {
      return e.kind == EventKind::StageAdvanced && !e.counts_as_interaction;
    }));

    const std::vector<HierarchyPath> paths{path_of(s, "drawstring waist")};
    const std::vector<std::string> words{"active skirt"};
    auto draft = h.engine.select_keywords(s, paths, words);
    h.engine.refine_prompt(s, draft, std::nullopt);
    const auto design = h.engine.generate_combination(s);
    CHECK(design.kind == ArtifactKind::DesignImageSet);
    CHECK(design.composition.count == 4);
    CHECK(design.image_refs.size() == 4);

    CHECK(code_of([&] { h.engine.advance_stage(s, mood); }) ==
          ErrorCode::illegal_transition);
  }
  SUBCASE("dangling or non-moodboard references") {
    Session s = athleisure_moodboard(h);
    CHECK(code_of([&] { h.engine.advance_stage(s, "a99"); }) == ErrorCode::validation);
  }
  SUBCASE("advance before any generation") {
    Session s = h.engine.create_session(SessionMode::Clay, "chic", 1);
    CHECK(code_of([&] { h.engine.advance_stage(s, "a1"); }) == ErrorCode::validation);
  }
  SUBCASE("baseline flips the stage without suggestions") {
    Session s = h.engine.create_session(SessionMode::Baseline, "chic", 1);
    const auto r = h.engine.submit_vague_prompt(s, "chic");
    h.engine.advance_stage(s, r.artifact->id);
    CHECK(s.stage == Stage::Design);
    CHECK_FALSE(s.hierarchy);
    h.engine.submit_vague_prompt(s, "chic coat");
    CHECK(s.artifacts.back().stage == Stage::Design);
  }
}

TEST_CASE("advance_phase and the DG3 restart") {
  Harness h;
  Session s = athleisure_moodboard(h);
  h.engine.advance_phase(s, Phase::PromptRefinement);
  CHECK(s.phase == Phase::PromptRefinement);
  const auto artifacts = s.artifacts.size();
  const auto events = s.events.size();
  h.engine.advance_phase(s, Phase::VaguePrompt);
  CHECK(s.phase == Phase::VaguePrompt);
  CHECK_FALSE(s.hierarchy);
  CHECK(s.keyword_draft.empty());
  CHECK(s.artifacts.size() == artifacts);
  CHECK(s.events.size() == events);

  Session fresh = h.engine.create_session(SessionMode::Clay, "chic", 1);
  try {
    h.engine.advance_phase(fresh, Phase::CombinationResults);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::illegal_transition);
    const std::string msg = e.what();
    CHECK(msg.find("vague_prompt") != std::string::npos);
    CHECK(msg.find("combination_results") != std::string::npos);
  }
}

TEST_CASE("logged DG3 restart via a new vague prompt") {
  Harness h;
  Session s = athleisure_moodboard(h);
  h.engine.refine_prompt(s, s.current_prompt->keywords, std::nullopt);
  h.engine.submit_vague_prompt(s, "something vintage instead");
  CHECK(s.phase == Phase::HierarchicalResults);
  CHECK(s.keyword_draft.empty());
  CHECK(s.artifacts.size() == 1);
  CHECK(audit_session(s).empty());
}

TEST_CASE("specificity score") {
  const HierarchyPath style{{0}}, leaf{{0, 0, 0, 0}};
  CHECK(specificity_score({Keyword::suggested("athleisure", style)}, std::nullopt) == 1.0);
  CHECK(specificity_score({Keyword::suggested("mesh", leaf), Keyword::user("active skirt")},
                          std::nullopt) == 7.0);
  CHECK(specificity_score({Keyword::user("x")}, std::string("two words")) == 4.0);
}

TEST_CASE("interaction count recount") {
  std::vector<InteractionEvent> events;
  const auto t = clay::test::epoch_2024();
  auto add = [&](EventKind k, int n) {
    for (int i = 0; i < n; ++i)
      events.push_back(make_event(t, "s", k, {{"i", events.size()}}));
  };
  CHECK(interaction_count(events) == 0);
  add(EventKind::GenerationRequested, 5);
  add(EventKind::KeywordSelected, 3);
  add(EventKind::VaguePromptSubmitted, 1);
  int oracle = 0;
  for (const auto &e : events)
    oracle += e.kind == EventKind::GenerationRequested ||
              e.kind == EventKind::VaguePromptSubmitted ||
              e.kind == EventKind::CompositionDirective;
  CHECK(oracle == 6);
  CHECK(interaction_count(events) == oracle);

  Harness h;
  Session b = h.engine.create_session(SessionMode::Baseline, "chic", 1);
  for (int i = 0; i < 11; ++i)
    h.engine.submit_vague_prompt(b, "chic " + std::to_string(i));
  CHECK(b.interaction_count() == 11);
}

TEST_CASE("event log lines") {
  const auto e = make_event(clay::test::epoch_2024(), "s1", EventKind::PromptRefined,
                            {{"prompt", "x"}});
  CHECK(e.payload_digest == sha256_hex(e.payload.dump()));
  CHECK_FALSE(e.counts_as_interaction);
  const std::string line = to_log_line(e);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(parse_log_line(line) == e);
  auto j = nlohmann::json::parse(line);
  j["payload"]["prompt"] = "y";
  CHECK_THROWS_AS(parse_log_line(j.dump()), Error);
  j = nlohmann::json::parse(line);
  j["counts_as_interaction"] = true;
  CHECK_THROWS_AS(parse_log_line(j.dump()), Error);
  CHECK_THROWS_AS(parse_log_line("{not json"), Error);
}

TEST_CASE("session log round trip, restore and replay") {
  Harness h;
  Session s = athleisure_moodboard(h);
  h.engine.modify_composition(s, CompositionDirective::ReduceTileCount);
  h.engine.advance_stage(s, s.artifacts.back().id);
  h.engine.view_hierarchy(s);
  const std::vector<std::string> words{"active skirt"};
  auto draft = h.engine.select_keywords(s, {}, words);
  h.engine.refine_prompt(s, draft, std::string("for a summer resort"));
  h.engine.generate_combination(s);

  const std::string text = serialize_log(s, h.config);
  std::istringstream in(text);
  const ParsedLog log = parse_log(in, "mem");
  CHECK(log.events == s.events);
  CHECK(log.header.session_id == s.id);
  CHECK_FALSE(log.truncated_tail);

  const Session restored = restore_session(log);
  CHECK(restored.events == s.events);
  CHECK(restored.artifacts == s.artifacts);
  CHECK(restored.hierarchy == s.hierarchy);
  CHECK(restored.current_prompt == s.current_prompt);
  CHECK(restored.phase_history == s.phase_history);
  CHECK(restored.composition == s.composition);

  Harness fresh;
  const ReplayReport rep = replay_session(log, fresh.backends);
  CHECK(rep.identical);
  CHECK(rep.differences.empty());
  CHECK(serialize_log(rep.session, fresh.config) == text);

  SUBCASE("torn tail") {
    const std::string torn = text + "{\"timestamp\":\"2024";
    std::istringstream a(torn);
    CHECK_THROWS_AS(parse_log(a, "mem"), Error);
    std::istringstream b(torn);
    const ParsedLog tolerant = parse_log(b, "mem", true);
    CHECK(tolerant.truncated_tail);
    CHECK(tolerant.events == s.events);
  }
  SUBCASE("corrupt line names the source and line") {
    std::string bad = text;
    const auto second = bad.find('\n') + 1;
    bad.insert(second, "garbage\n");
    std::istringstream a(bad);
    try {
      parse_log(a, "sess.jsonl");
      FAIL("expected an error");
    } catch (const Error &e) {
      CHECK(std::string(e.what()).find("sess.jsonl:2") != std::string::npos);
    }
  }
  SUBCASE("replay notices a different backend outcome") {
    std::istringstream a(text);
    ParsedLog changed = parse_log(a, "mem");
    auto &ev = changed.events.front();
    ev.payload["hierarchy"]["styles"][0]["moods"].push_back("extra");
    ev.payload_digest = sha256_hex(ev.payload.dump());
    CHECK_FALSE(replay_session(changed, fresh.backends).identical);
  }
}

TEST_CASE("audit_session and SessionMonitor") {
  Harness h;
  SessionMonitor mon;
  Session s = h.engine.create_session(SessionMode::Clay, "athleisure", 9);
  CHECK(mon.observe(s).empty());
  h.engine.submit_vague_prompt(s, "athleisure");
  CHECK(mon.observe(s).empty());
  h.engine.refine_prompt(s, {Keyword::user("mesh")}, std::nullopt);
  h.engine.generate_combination(s);
  CHECK(audit_session(s).empty());
  CHECK(mon.observe(s).empty());

  Session broken = s;
  broken.keyword_draft.push_back(Keyword::suggested("not in tree", HierarchyPath{{0}}));
  CHECK_FALSE(audit_session(broken).empty());

  broken = s;
  broken.events[1].counts_as_interaction = true;
  CHECK_FALSE(audit_session(broken).empty());

  broken = s;
  broken.phase_history.push_back({Stage::Moodboard, Phase::VaguePrompt});
  broken.phase = Phase::VaguePrompt;
  CHECK_FALSE(audit_session(broken).empty());

  Session shrunk = s;
  shrunk.events.pop_back();
  CHECK_FALSE(mon.observe(shrunk).empty());

  Session baseline = h.engine.create_session(SessionMode::Baseline, "chic", 1);
  h.engine.submit_vague_prompt(baseline, "chic");
  CHECK(audit_session(baseline).empty());
  baseline.hierarchy = s.hierarchy;
  CHECK_FALSE(audit_session(baseline).empty());
}

TEST_CASE("blob stores are content addressed") {
  clay::test::TempDir dir;
  FsBlobStore fs_store(dir.path());
  MemoryBlobStore mem;
  for (BlobStore *store : {static_cast<BlobStore *>(&fs_store),
                           static_cast<BlobStore *>(&mem)}) {
    const std::string key = store->put("hello");
    CHECK(key == sha256_hex("hello"));
    CHECK(store->put("hello") == key);
    CHECK(store->get(key) == "hello");
    CHECK(store->contains(key));
    CHECK_FALSE(store->get(sha256_hex("other")));
    CHECK(store->keys() == std::vector<std::string>{key});
    CHECK(audit(*store).empty());
  }
  {
    std::ofstream out(fs_store.path_for(sha256_hex("hello")), std::ios::trunc);
    out << "tampered";
  }
  CHECK(audit(fs_store) == std::vector<std::string>{sha256_hex("hello")});
}

TEST_CASE("workflow config validation and round trip") {
  WorkflowConfig cfg;
  cfg.composition.max_count = 10;
  cfg.cardinality.sub_styles_per_style = 2;
  const auto back = workflow_config_from_json(to_json(cfg));
  CHECK(back.composition.max_count == 10);
  CHECK(back.cardinality.sub_styles_per_style == 2);
  cfg.composition.fashion_ratio = 1.5;
  CHECK_THROWS_AS(validate(cfg), Error);
}

}
