#include <doctest.h>

#include <map>

#include "fts/error.hpp"
#include "fts/labeler.hpp"
#include "synthetic.hpp"

using namespace fts::labeler;
using fts::keywords::KeywordList;
using fts::textprep::Sentence;

namespace {

Sentence sent(std::string id, std::size_t i, std::string text) {
  Sentence s;
  s.doc_id = std::move(id);
  s.index = i;
  s.cleaned = std::move(text);
  s.raw = s.cleaned;
  return s;
}

std::vector<LabeledSentence> rows(const std::string& label, std::size_t n, std::size_t offset = 0) {
  std::vector<LabeledSentence> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto k = label + std::to_string(offset + i);
    out.push_back({k, k, label});
  }
  return out;
}

}  // namespace

TEST_CASE("build_labeled_dataset") {
  const auto kw = KeywordList::financial();
  const std::vector<Sentence> s = {
      sent("a", 0, "revenue and sales grew strongly"),     // Sales x2
      sent("a", 1, "revenue grew but costs grew too"),      // Sales 1, Cost 1
      sent("a", 2, "the lawsuit was settled quietly"),      // Litigation 1, relaxed
      sent("a", 3, "the pandemic hurt our revenue"),        // Covid 1 + Sales 1, relaxed
      sent("a", 4, "revenue and sales grew strongly"),      // duplicate text
      sent("a", 5, "the audit was completed on time"),      // Accounting 1, not relaxed
      sent("a", 6, "employee hiring and staff retention"),  // HR
  };
  const auto out = build_labeled_dataset(s, kw, {"Litigation", "Covid-19"});
  std::map<std::string, std::string> got;
  for (const auto& r : out) got[r.key] = r.label;
  CHECK(got == std::map<std::string, std::string>{
                   {"a#0", "Sales"}, {"a#2", "Litigation"}, {"a#3", "Covid-19"}, {"a#6", "HR"}});
  CHECK(out.front().key == "a#0");  // first occurrence wins the dedup
}

TEST_CASE("train_size uses the ceiling") {
  CHECK(train_size(10, 0.8) == 8);
  CHECK(train_size(11, 0.8) == 9);
  CHECK(train_size(2, 0.8) == 2);
  CHECK(train_size(5, 0.5) == 3);
  CHECK(train_size(1250, 0.8) == 1000);
}

TEST_CASE("split_topicwise") {
  auto data = rows("Sales", 11);
  const auto hr = rows("HR", 5);
  data.insert(data.end(), hr.begin(), hr.end());
  const auto ds = split_topicwise(data, 0.8, 42);
  CHECK(ds.per_topic.at("Sales").train == 9);
  CHECK(ds.per_topic.at("Sales").test == 2);
  CHECK(ds.per_topic.at("HR").train == 4);
  CHECK(ds.per_topic.at("HR").test == 1);
  CHECK(ds.train.size() + ds.test.size() == data.size());

  SUBCASE("disjoint and order preserving") {
    std::set<std::string> train;
    for (const auto& r : ds.train) train.insert(r.key);
    for (const auto& r : ds.test) CHECK(train.count(r.key) == 0);
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < data.size(); ++i) pos[data[i].key] = i;
    for (std::size_t i = 1; i < ds.train.size(); ++i) CHECK(pos[ds.train[i - 1].key] < pos[ds.train[i].key]);
  }
  SUBCASE("deterministic per seed") {
    const auto again = split_topicwise(data, 0.8, 42);
    REQUIRE(again.test.size() == ds.test.size());
    for (std::size_t i = 0; i < ds.test.size(); ++i) CHECK(again.test[i].key == ds.test[i].key);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(split_topicwise(rows("Tiny", 1), 0.8, 1), fts::Error);
    CHECK_THROWS_AS(split_topicwise(data, 1.0, 1), fts::Error);
    CHECK_THROWS_AS(split_topicwise(data, 0.0, 1), fts::Error);
  }
}

TEST_CASE("labeled file round trip") {
  const auto dir = synth::temp_dir("labeler_io");
  const auto data = rows("Cost", 3);
  write_labeled(data, dir / "l.jsonl");
  const auto back = read_labeled(dir / "l.jsonl");
  REQUIRE(back.size() == 3);
  CHECK(back[2].key == data[2].key);
  CHECK(back[2].label == "Cost");
  write_split(split_topicwise(data, 0.8, 3), dir / "split");
  CHECK(read_labeled(dir / "split/train.jsonl").size() == 3);
  CHECK(read_labeled(dir / "split/test.jsonl").empty());
}
