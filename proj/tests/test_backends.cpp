#include "doctest.h"
#include "support.hpp"

#include "clay/backends/adapters.hpp"
#include "clay/backends/mock.hpp"
#include "clay/backends/mock_images.hpp"
#include "clay/backends/parsers.hpp"
#include "clay/backends/png.hpp"
#include "clay/backends/prompts.hpp"
#include "clay/common/digest.hpp"
#include "clay/common/error.hpp"
#include "clay/common/rng.hpp"

#include <cmath>
#include <deque>

using namespace clay;
using nlohmann::json;
using clay::test::taxonomy;

namespace {

std::vector<std::string> names(const StyleHierarchy &h) {
  std::vector<std::string> out;
  for (const auto &s : h.styles)
    for (const auto &sub : s.sub_styles)
      out.push_back(sub.name);
  return out;
}

bool has(const std::vector<std::string> &v, std::string_view x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

json taxonomy_doc() {
  json j = to_json(taxonomy()->tree);
  j["version"] = "1";
  return j;
}

class ScriptedChat final : public ChatModel {
public:
  explicit ScriptedChat(std::deque<std::string> replies) : replies_(std::move(replies)) {}
  std::string complete(const ChatRequest &r) override {
    requests.push_back(r);
    REQUIRE_FALSE(replies_.empty());
    auto next = replies_.front();
    replies_.pop_front();
    return next;
  }
  std::string model_id() const override { return "scripted"; }
  std::vector<ChatRequest> requests;

private:
  std::deque<std::string> replies_;
};

} // namespace

TEST_SUITE("backends") {

TEST_CASE("bundled taxonomy") {
  const Taxonomy &t = bundled_taxonomy();
  CHECK(taxonomy_problems(t).empty());
  CHECK(t.version == "1");
  CHECK(t.digest == hierarchy_digest(t.tree));
  for (auto style : kStudyStyles)
    CHECK_FALSE(match_styles(t, style).empty());
  CHECK(structural_problems(t.tree).empty());
  CHECK(has(names(t.tree), "Summer Breeze Athleisure"));
  CHECK(has(names(t.tree), "vintage granny"));
  CHECK(has(names(t.tree), "romantic vintage"));
}

TEST_CASE("taxonomy documents are validated") {
  const json good = taxonomy_doc();
  CHECK(parse_taxonomy(good.dump(), "doc").digest == taxonomy()->digest);
  auto expect_config = [](const std::string &text, const std::string &needle) {
    try {
      parse_taxonomy(text, "doc.json");
      FAIL("expected an error");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::configuration);
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  expect_config("{", "doc.json");
  json missing = good;
  missing["styles"].erase(0);
  expect_config(missing.dump(), "feminine");
  json empty_leaf = good;
  empty_leaf["styles"][0]["sub_styles"][0]["elements"][0]["sub_elements"] = json::array();
  expect_config(empty_leaf.dump(), "doc.json");
  json no_version = good;
  no_version.erase("version");
  expect_config(no_version.dump(), "version");
}

TEST_CASE("match_styles") {
  const Taxonomy &t = *taxonomy();
  CHECK(match_styles(t, "VINTAGE").size() == 1);
  CHECK(match_styles(t, "hip-hop streetwear").size() == 1);
  CHECK(match_styles(t, "zzz").empty());
  CHECK(lowercase("AbC") == "abc");
}

TEST_CASE("extraction request is few-shot") {
  const std::string text = "feminine moodboard with a summer resort feel";
  const auto a = build_extraction_request(text);
  const auto b = build_extraction_request("something else");
  CHECK(a.task == ChatTask::KeywordExtraction);
  CHECK(a.user_content == text);
  CHECK(a.exemplars.size() >= 3);
  CHECK(a.exemplars.size() == extraction_exemplars().size());
  REQUIRE(a.exemplars.size() == b.exemplars.size());
  for (std::size_t i = 0; i < a.exemplars.size(); ++i) {
    CHECK(a.exemplars[i].input == b.exemplars[i].input);
    CHECK(a.exemplars[i].output == b.exemplars[i].output);
    CHECK_NOTHROW(parse_keyword_response(a.exemplars[i].output));
  }
  CHECK_FALSE(a.response_schema_hint.empty());
  CHECK_THROWS_AS(build_extraction_request(""), Error);
}

TEST_CASE("hierarchy request is zero-shot and names its inputs") {
  const HierarchyCardinality card{2, 4, 5};
  const auto r = build_hierarchy_request({{"athleisure"}, {"resort"}}, card);
  CHECK(r.task == ChatTask::HierarchyGeneration);
  CHECK(r.exemplars.empty());
  for (auto word : {"athleisure", "resort", "sub-style", "sub-element"})
    CHECK_MESSAGE(r.instruction.find(word) != std::string::npos, word);
  const json content = json::parse(r.user_content);
  CHECK(content["styles"] == json::array({"athleisure"}));
  CHECK(content["cardinality"]["sub_elements_per_element"] == 5);
  CHECK_THROWS_AS(build_hierarchy_request({}, card), Error);
}

TEST_CASE("caption request and moodboard_source") {
  clay::test::Harness h;
  Session s = h.engine.create_session(SessionMode::Clay, "athleisure", 2);
  h.engine.submit_vague_prompt(s, "athleisure");
  h.engine.refine_prompt(s, {Keyword::user("drawstring waist")}, std::nullopt);
  const auto art = h.engine.generate_combination(s);
  const MoodboardSource src = moodboard_source(s, art.id);
  CHECK(src.image_ref == art.image_refs.front());
  CHECK(src.keywords == std::vector<std::string>{"drawstring waist"});
  const auto r = build_caption_request(src);
  CHECK(r.task == ChatTask::Captioning);
  CHECK(r.exemplars.empty());
  CHECK(r.user_content.find("drawstring waist") != std::string::npos);
  CHECK(r.user_content.find(art.id) != std::string::npos);
  CHECK_THROWS_AS(moodboard_source(s, "a404"), Error);

  Session b = h.engine.create_session(SessionMode::Baseline, "chic", 2);
  const auto base = h.engine.submit_vague_prompt(b, "chic");
  CHECK_THROWS_AS(moodboard_source(b, base.artifact->id), Error);
}

TEST_CASE("parsers") {
  const StyleHierarchy h =
      mock_generate_hierarchy({{"athleisure"}, {}}, *taxonomy(), 1, {});

  SUBCASE("round trip through the serializer") {
    const auto parsed = parse_hierarchy_response(to_json(h).dump(2));
    CHECK(parsed.value == h);
    CHECK(parsed.warnings.empty());
    CHECK(structural_problems(parsed.value).empty());
    CHECK(parse_hierarchy_response("```json\n" + to_json(h).dump() + "\n```\n").value == h);
  }
  SUBCASE("truncated text is a retry-advised parse error") {
    const std::string full = to_json(h).dump();
    try {
      parse_hierarchy_response(full.substr(0, full.size() / 2));
      FAIL("expected an error");
    } catch (const ParseError &e) {
      CHECK(e.retry_advised());
      CHECK(e.retriable());
      CHECK(e.raw() == full.substr(0, full.size() / 2));
    }
  }
  SUBCASE("duplicate siblings are dropped with a warning") {
    json j = to_json(h);
    auto &subs = j["styles"][0]["sub_styles"];
    json dup = subs[0];
    dup["name"] = "  " + dup["name"].get<std::string>() + " ";
    subs.push_back(dup);
    const auto parsed = parse_hierarchy_response(j.dump());
    CHECK(parsed.value == h);
    REQUIRE(parsed.warnings.size() == 1);
    // Oracle: exact-match scan of the trimmed names.
    std::vector<std::string> seen;
    int dropped = 0;
    for (const auto &s : j["styles"][0]["sub_styles"]) {
      std::string n = s["name"];
      n.erase(0, n.find_first_not_of(' '));
      n.erase(n.find_last_not_of(' ') + 1);
      if (has(seen, n))
        ++dropped;
      else
        seen.push_back(n);
    }
    CHECK(dropped == 1);
  }
  SUBCASE("empty sub-element list is a structural error") {
    json j = to_json(h);
    j["styles"][0]["sub_styles"][0]["elements"][0]["sub_elements"] = json::array();
    try {
      parse_hierarchy_response(j.dump());
      FAIL("expected an error");
    } catch (const StructuralError &e) {
      CHECK_FALSE(e.retriable());
    }
  }
  SUBCASE("keyword and caption responses") {
    const auto k = parse_keyword_response(
        R"({"styles":[" vintage ","vintage","chic"],"moods":["calm"]})");
    CHECK(k.value.styles == std::vector<std::string>{"vintage", "chic"});
    CHECK(k.value.moods == std::vector<std::string>{"calm"});
    CHECK(k.warnings.size() == 1);
    CHECK_THROWS_AS(parse_keyword_response(R"({"styles":[],"moods":[]})"), ParseError);
    CHECK_THROWS_AS(parse_keyword_response(R"(["vintage"])"), ParseError);

    const auto c = parse_caption_response(
        R"({"elements":[{"category":"detail","sub_elements":["thin straps"]},)"
        R"({"category":"detail","sub_elements":["x"]}]})");
    REQUIRE(c.value.elements.size() == 1);
    CHECK(c.value.elements[0].sub_elements == std::vector<std::string>{"thin straps"});
    CHECK_THROWS_AS(parse_caption_response(
                        R"({"elements":[{"category":"detail","sub_elements":[]}]})"),
                    StructuralError);
  }
}

TEST_CASE("parsers are total over arbitrary input") {
  DeterministicRng rng(2024);
  const std::string seed_text =
      to_json(mock_generate_hierarchy({{"vintage"}, {}}, *taxonomy(), 3, {})).dump();
  const std::string alphabet = "{}[]\":,` \n\\abcxyz0123456789-.eE\xff\x80";
  int values = 0, errors = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string input;
    switch (i % 3) {
    case 0:
      for (std::size_t n = rng.index(80); n > 0; --n)
        input += static_cast<char>(rng.index(256));
      break;
    case 1:
      for (std::size_t n = rng.index(120); n > 0; --n)
        input += alphabet[rng.index(alphabet.size())];
      break;
    default:
      input = seed_text;
      for (int m = 0; m < 1 + static_cast<int>(rng.index(4)); ++m) {
        const auto pos = rng.index(input.size());
        if (rng.chance(0.5))
          input[pos] = alphabet[rng.index(alphabet.size())];
        else
          input.erase(pos, rng.index(8));
      }
    }
    for (int which = 0; which < 3; ++which) {
      try {
        if (which == 0)
          parse_keyword_response(input);
        else if (which == 1)
          parse_hierarchy_response(input);
        else
          parse_caption_response(input);
        ++values;
      } catch (const Error &) {
        ++errors;
      } catch (const std::exception &e) {
        FAIL("non-structured exception: " << e.what());
      }
    }
  }
  CHECK(values + errors == 9000);
  CHECK_THROWS_AS(parse_hierarchy_response(std::string(100, '[') + std::string(100, ']')),
                  ParseError);
}

TEST_CASE("mock keyword extraction and hierarchy generation") {
  const Taxonomy &t = *taxonomy();
  const auto k = mock_extract_keywords("A Vintage look, relaxed and resort-ready", t);
  CHECK(k.styles == std::vector<std::string>{"vintage"});
  CHECK(has(k.moods, "relaxed"));
  CHECK(has(k.moods, "resort"));
  CHECK(mock_extract_keywords("  zzz  ", t).styles == std::vector<std::string>{"zzz"});

  const HierarchyCardinality card{2, 3, 2};
  const auto a = mock_generate_hierarchy({{"vintage"}, {}}, t, 42, card);
  CHECK(a == mock_generate_hierarchy({{"vintage"}, {}}, t, 42, card));
  REQUIRE(a.styles.size() == 1);
  CHECK(a.styles[0].sub_styles.size() == 2);
  for (const auto &sub : a.styles[0].sub_styles) {
    CHECK(sub.elements.size() == 3);
    for (const auto &e : sub.elements)
      CHECK(e.sub_elements.size() == 2);
  }
  bool differs = false;
  for (std::uint64_t seed = 0; seed < 20 && !differs; ++seed)
    differs = mock_generate_hierarchy({{"vintage"}, {}}, t, seed, card) != a;
  CHECK(differs);

  const auto full = mock_generate_hierarchy({{"vintage"}, {}}, t, 42, {});
  const auto subs = names(full);
  CHECK(has(subs, "vintage granny"));
  CHECK(has(subs, "romantic vintage"));

  const auto by_mood = mock_generate_hierarchy({{}, {"breezy"}}, t, 1, {});
  CHECK(by_mood.styles.at(0).name == "athleisure");

  try {
    mock_generate_hierarchy({{"zzz-unknown"}, {}}, t, 1, {});
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::validation);
    for (auto style : kStudyStyles)
      CHECK(std::string(e.what()).find(style) != std::string::npos);
  }
}

TEST_CASE("mock captioner") {
  MoodboardSource src;
  src.keywords = {"Summer Breeze Athleisure", "breathable mesh"};
  const auto s = mock_caption(src, *taxonomy());
  std::vector<std::string> all;
  std::vector<std::string> cats;
  for (const auto &e : s.elements) {
    cats.push_back(e.category);
    all.insert(all.end(), e.sub_elements.begin(), e.sub_elements.end());
  }
  CHECK(has(all, "drawstring waist"));
  CHECK(has(all, "thin straps"));
  std::sort(cats.begin(), cats.end());
  CHECK(std::adjacent_find(cats.begin(), cats.end()) == cats.end());

  src.keywords = {"active skirt"};
  const auto fb = mock_caption(src, *taxonomy());
  REQUIRE(fb.elements.size() == 1);
  CHECK(fb.elements[0].category == "detail");
  CHECK(fb.elements[0].sub_elements == std::vector<std::string>{"active skirt"});
}

TEST_CASE("MockChatModel answers in the parser formats") {
  MockChatModel chat(taxonomy());
  const auto k = parse_keyword_response(
      chat.complete(build_extraction_request("an athleisure look for a resort")));
  CHECK(k.value.styles == std::vector<std::string>{"athleisure"});
  const auto h = parse_hierarchy_response(
      chat.complete(build_hierarchy_request(k.value, {})));
  CHECK(structural_problems(h.value).empty());
  MoodboardSource src;
  src.keywords = {"Summer Breeze Athleisure"};
  const auto c = parse_caption_response(chat.complete(build_caption_request(src)));
  CHECK_FALSE(c.value.elements.empty());
}

TEST_CASE("PNG encode and decode") {
  RgbImage img;
  img.width = 5;
  img.height = 3;
  img.pixels.assign(5 * 3 * 3, 0);
  img.at(0, 0)[0] = 200;
  img.at(4, 2)[1] = 100;
  img.at(4, 1)[2] = 50;
  img.text["clay:note"] = "hello";
  const std::string bytes = encode_png(img);
  CHECK(bytes.substr(1, 3) == "PNG");
  CHECK(encode_png(img) == bytes);
  const RgbImage back = decode_png(bytes);
  CHECK(back.width == 5);
  CHECK(back.height == 3);
  CHECK(back.pixels == img.pixels);
  CHECK(back.text == img.text);
  CHECK(count_non_black_regions(back) == 2);
  CHECK_THROWS_AS(decode_png("not a png"), Error);
  CHECK_THROWS_AS(decode_png(bytes.substr(0, bytes.size() / 2)), Error);
}

TEST_CASE("mock moodboards are collages of labelled tiles") {
  for (int n : {1, 2, 4, 6, 7, 12, 24}) {
    for (double ratio : {0.0, 0.5, 0.75, 1.0}) {
      ImageRequest req;
      req.prompt_text = "athleisure collage";
      req.width = req.height = 128;
      req.seed = 7;
      req.collage = CollageLayout{n, ratio, {"mesh", "thin straps"}};
      const auto pngs = MockImageSynthesizer::render(req);
      REQUIRE(pngs.size() == 1);
      const RgbImage img = decode_png(pngs[0]);
      CHECK(count_non_black_regions(img) == n);
      int fashion = 0, labelled = 0;
      for (int i = 0; i < n; ++i) {
        const auto it = img.text.find("clay:tile:" + std::to_string(i));
        REQUIRE(it != img.text.end());
        ++labelled;
        fashion += it->second.rfind("fashion|", 0) == 0;
        const auto kw = it->second.substr(it->second.find('|') + 1);
        CHECK((kw == "mesh" || kw == "thin straps"));
      }
      CHECK(labelled == n);
      CHECK(fashion == std::lround(ratio * n));
    }
  }
}

TEST_CASE("mock image synthesis is a pure function of the request") {
  auto store = std::make_shared<MemoryBlobStore>();
  MockImageSynthesizer synth(store);
  ImageRequest req;
  req.prompt_text = "design";
  req.count = 3;
  req.width = 64;
  req.height = 48;
  req.seed = 5;
  const auto a = synth.synthesize(req);
  CHECK(a.size() == 3);
  CHECK(a == synth.synthesize(req));
  for (const auto &ref : a) {
    CHECK(sha256_hex(*store->get(ref)) == ref);
    const auto img = decode_png(*store->get(ref));
    CHECK(img.width == 64);
    CHECK(img.height == 48);
  }
  req.seed = 6;
  CHECK(a != synth.synthesize(req));
  req.count = 0;
  CHECK_THROWS_AS(synth.synthesize(req), Error);
  req.count = 1;
  req.prompt_text = "";
  CHECK_THROWS_AS(synth.synthesize(req), Error);
}

TEST_CASE("chat adapters retry once on parse errors") {
  const std::string good = R"({"styles":["chic"],"moods":[]})";
  SUBCASE("second answer accepted") {
    auto chat = std::make_shared<ScriptedChat>(std::deque<std::string>{"oops", good});
    ChatKeywordExtractor ex(chat);
    CHECK(ex.extract_keywords("chic", 1).styles == std::vector<std::string>{"chic"});
    CHECK(chat->requests.size() == 2);
  }
  SUBCASE("second failure propagates") {
    auto chat = std::make_shared<ScriptedChat>(std::deque<std::string>{"oops", "again"});
    ChatKeywordExtractor ex(chat);
    CHECK_THROWS_AS(ex.extract_keywords("chic", 1), ParseError);
    CHECK(chat->requests.size() == 2);
  }
  SUBCASE("structural errors are not retried") {
    auto chat = std::make_shared<ScriptedChat>(std::deque<std::string>{
        R"({"styles":[{"name":"chic","moods":[],"sub_styles":[]}]})"});
    ChatHierarchyGenerator gen(chat, {});
    CHECK_THROWS_AS(gen.generate_hierarchy({{"chic"}, {}}, 1), StructuralError);
    CHECK(chat->requests.size() == 1);
  }
  SUBCASE("warnings reach the sink") {
    auto chat = std::make_shared<ScriptedChat>(
        std::deque<std::string>{R"({"styles":["chic","chic"],"moods":[]})"});
    std::vector<std::string> warnings;
    ChatKeywordExtractor ex(chat, [&](const std::string &w) { warnings.push_back(w); });
    ex.extract_keywords("chic", 1);
    CHECK(warnings.size() == 1);
  }
}

TEST_CASE("captioner attaches pixels only with vision on") {
  auto store = std::make_shared<MemoryBlobStore>();
  const std::string ref = store->put("png-bytes");
  const std::string reply = R"({"elements":[{"category":"detail","sub_elements":["x"]}]})";
  MoodboardSource src;
  src.artifact_id = "a1";
  src.image_ref = ref;
  src.keywords = {"x"};
  for (bool vision : {false, true}) {
    auto chat = std::make_shared<ScriptedChat>(std::deque<std::string>{reply});
    ChatMoodboardCaptioner cap(chat, store, vision);
    cap.caption(src, 1);
    REQUIRE(chat->requests.size() == 1);
    CHECK(chat->requests[0].image_png_base64.has_value() == vision);
    if (vision)
      CHECK(*chat->requests[0].image_png_base64 == base64_encode("png-bytes"));
  }
}

TEST_CASE("mock factory never needs credentials") {
  BackendConfig mock;
  auto store = std::make_shared<MemoryBlobStore>();
  const auto set = make_backends(mock, mock, taxonomy(), store, {});
  CHECK(set.extractor);
  CHECK(set.images->backend_id() == "mock-image");
  BackendConfig wrong;
  wrong.kind = BackendKind::RemoteImage;
  wrong.base_url = "http://127.0.0.1:1";
  wrong.credential_env_var = "CLAY_TEST_UNSET_TOKEN";
  CHECK_THROWS_AS(make_backends(wrong, mock, taxonomy(), store, {}), Error);
}

}
