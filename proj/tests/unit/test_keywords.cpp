#include <doctest.h>

#include "fts/error.hpp"
#include "fts/keywords.hpp"
#include "synthetic.hpp"

using namespace fts::keywords;

namespace {

int count_for(const KeywordList& kw, const TopicCounts& c, const char* name) {
  return c.at(*kw.index_of(name));
}

}  // namespace

TEST_CASE("bundled list has the fourteen domains") {
  const auto kw = KeywordList::financial();
  REQUIRE(kw.size() == 14);
  CHECK(kw.name(0) == "Sales");
  CHECK(kw.name(13) == "Covid-19");
  CHECK(kw.is_keyword("revenue"));
  CHECK_FALSE(kw.is_keyword("revenues"));
  CHECK_FALSE(kw.index_of("Nope").has_value());
}

TEST_CASE("substring matching") {
  const auto kw = KeywordList::financial();
  SUBCASE("inflected forms match their stem") {
    const auto c = match_keywords("logistics and logistical issues", kw);
    CHECK(count_for(kw, c, "Operations") == 2);
  }
  SUBCASE("compound words match") {
    const auto c = match_keywords("cashflow improved", kw);
    CHECK(count_for(kw, c, "Liquidity") == 1);
  }
  SUBCASE("case insensitive") {
    CHECK(count_for(kw, match_keywords("REVENUE Revenue", kw), "Sales") == 2);
  }
  SUBCASE("a word counts once per domain but may hit several domains") {
    const auto c = match_words({"depreciation", "shareholder"}, kw);
    CHECK(count_for(kw, c, "Cost") == 1);
    CHECK(count_for(kw, c, "Financing") == 1);
    // "team" and "work" are both HR keywords
    const auto d = match_words({"teamwork"}, kw);
    CHECK(count_for(kw, d, "HR") == 1);
  }
  SUBCASE("no hits") {
    const auto c = match_keywords("the weather was pleasant", kw);
    for (int v : c) CHECK(v == 0);
  }
}

TEST_CASE("label rules") {
  TopicCounts c(14, 0);
  SUBCASE("exclusive rule") {
    c[0] = 2;
    CHECK(label_sentence(c) == std::optional<std::size_t>(0));
    c[3] = 1;
    CHECK_FALSE(label_sentence(c).has_value());
    c[0] = 1;
    c[3] = 0;
    CHECK_FALSE(label_sentence(c).has_value());
  }
  SUBCASE("dominant rule") {
    c[2] = 3;
    c[5] = 1;
    c[7] = 1;
    CHECK(dominant_topic(c) == std::optional<std::size_t>(2));
    c[5] = 2;
    CHECK_FALSE(dominant_topic(c).has_value());
  }
  SUBCASE("relaxed rule") {
    c[7] = 1;
    CHECK(relaxed_label(c, {7, 13}) == std::optional<std::size_t>(7));
    CHECK_FALSE(relaxed_label(c, {13}).has_value());
    c[0] = 1;
    CHECK(relaxed_label(c, {7}) == std::optional<std::size_t>(7));
    c[1] = 1;
    CHECK_FALSE(relaxed_label(c, {7}).has_value());
  }
}

TEST_CASE("keyword list validation") {
  CHECK_THROWS_AS(KeywordList(std::vector<Topic>{{"A", {"cash"}}, {"B", {"cashflow"}}}), fts::Error);
  CHECK_THROWS_AS(KeywordList(std::vector<Topic>{{"A", {"x"}}, {"A", {"y"}}}), fts::Error);
  CHECK_THROWS_AS(KeywordList(std::vector<Topic>{{"A", {"Upper"}}}), fts::Error);
  try {
    KeywordList(std::vector<Topic>{{"A", {"cash"}}, {"B", {"cashflow"}}});
  } catch (const fts::Error& e) {
    CHECK(e.code() == fts::Errc::KeywordCollision);
  }
}

TEST_CASE("keyword file round trip") {
  const auto dir = synth::temp_dir("keywords_io");
  const auto kw = KeywordList::financial();
  kw.save(dir / "k.json");
  const auto back = KeywordList::load(dir / "k.json");
  REQUIRE(back.size() == kw.size());
  for (std::size_t i = 0; i < kw.size(); ++i) {
    CHECK(back.topics()[i].name == kw.topics()[i].name);
    CHECK(back.topics()[i].keywords == kw.topics()[i].keywords);
  }
}
