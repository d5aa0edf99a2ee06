#include "doctest.h"

#include <algorithm>
#include <set>

#include "storygen/errors.hpp"
#include "storygen/ingest.hpp"
#include "storygen/replacement_list.hpp"
#include "test_helpers.hpp"

using storygen::build_replacement_list;
using storygen::Caption;
using storygen::CaptionSource;
using storygen::Lexicon;

namespace {

const Lexicon& lex() {
  static Lexicon lexicon = Lexicon::builtin();
  return lexicon;
}

std::vector<Caption> two_captions() {
  return {{"img1", "a black dog runs on the grass", CaptionSource::file},
          {"img2", "a man rides a horse", CaptionSource::file}};
}

}  // namespace

TEST_CASE("build_replacement_list unions categories with provenance") {
  auto pool = build_replacement_list(two_captions(), lex());
  REQUIRE(pool.subjects.size() == 2);
  CHECK(pool.subjects[0].word == "dog");
  CHECK(pool.subjects[0].image_id == "img1");
  CHECK(pool.subjects[1].word == "man");
  CHECK(pool.subjects[1].image_id == "img2");
  REQUIRE(pool.objects.size() == 2);
  CHECK(pool.objects[0].word == "grass");
  CHECK(pool.objects[1].word == "horse");
  REQUIRE(pool.adjectives.size() == 1);
  CHECK(pool.adjectives[0].word == "black");
}

TEST_CASE("five fixture features all land in the replacement list") {
  auto captions = storygen::load_captions_file(test_helpers::fixtures_dir() / "caps.jsonl");
  auto pool = build_replacement_list(captions, lex());
  std::set<std::string> words;
  for (const auto& f : pool.subjects) words.insert(f.word);
  for (const auto& f : pool.objects) words.insert(f.word);
  for (const auto& f : pool.adjectives) words.insert(f.word);
  for (const char* feature : {"dog", "horse", "person", "helmet", "motorcycle"}) {
    CHECK(words.count(feature) == 1);
  }
}

TEST_CASE("empty caption list raises EmptyInput") {
  CHECK_THROWS_AS(build_replacement_list({}, lex()), storygen::EmptyInput);
}

TEST_CASE("captions without any subject raise NoSubjectsFound") {
  std::vector<Caption> captions{{"imgx", "swimming in the cold lake", CaptionSource::file}};
  CHECK_THROWS_AS(build_replacement_list(captions, lex()), storygen::NoSubjectsFound);
}

TEST_CASE("duplicate words are kept once per category, first image wins") {
  std::vector<Caption> captions{
      {"img1", "a dog chases a ball", CaptionSource::file},
      {"img2", "a dog catches a stick", CaptionSource::file},
  };
  auto pool = build_replacement_list(captions, lex());
  REQUIRE(pool.subjects.size() == 1);
  CHECK(pool.subjects[0].word == "dog");
  CHECK(pool.subjects[0].image_id == "img1");
}

TEST_CASE("a word may sit in both subjects and objects") {
  std::vector<Caption> captions{
      {"img1", "a dog chases a cat", CaptionSource::file},
      {"img2", "a cat watches a dog", CaptionSource::file},
  };
  auto pool = build_replacement_list(captions, lex());
  CHECK(pool.contains(storygen::Category::subject, "dog"));
  CHECK(pool.contains(storygen::Category::object, "dog"));
  CHECK(pool.contains(storygen::Category::subject, "cat"));
  CHECK(pool.contains(storygen::Category::object, "cat"));
}

TEST_CASE("provenance closure: every entry's word tokenizes out of its image's caption") {
  auto captions = storygen::load_captions_file(test_helpers::fixtures_dir() / "caps.jsonl");
  auto pool = build_replacement_list(captions, lex());
  auto check_closure = [&](const std::vector<storygen::Feature>& features) {
    for (const auto& feature : features) {
      bool found = false;
      for (const auto& caption : captions) {
        if (caption.image_id != feature.image_id) continue;
        auto tokens = storygen::tokenize(caption.text);
        if (std::find(tokens.begin(), tokens.end(), feature.word) != tokens.end()) {
          found = true;
          break;
        }
      }
      INFO("feature ", feature.word, " from ", feature.image_id);
      CHECK(found);
    }
  };
  check_closure(pool.subjects);
  check_closure(pool.objects);
  check_closure(pool.adjectives);
}

TEST_CASE("determinism: identical captions give identical lists") {
  auto a = build_replacement_list(two_captions(), lex());
  auto b = build_replacement_list(two_captions(), lex());
  CHECK(a.subjects == b.subjects);
  CHECK(a.objects == b.objects);
  CHECK(a.adjectives == b.adjectives);
}
