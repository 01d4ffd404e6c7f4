#include <doctest.h>

#include <algorithm>
#include <random>

#include "fts/error.hpp"
#include "fts/io.hpp"
#include "fts/textprep.hpp"
#include "synthetic.hpp"

using namespace fts::textprep;
using fts::keywords::KeywordList;

namespace {

fts::corpus::Document doc(std::string text, std::string id = "d") {
  return {std::move(id), 2018, text, fts::corpus::count_words(text)};
}

TokenDoc tokens(std::string key, std::vector<std::string> t) { return {std::move(key), std::move(t)}; }

std::vector<std::size_t> indices(const std::vector<Sentence>& s) {
  std::vector<std::size_t> out;
  for (const auto& x : s) out.push_back(x.index);
  return out;
}

}  // namespace

TEST_CASE("segment_sentences") {
  CHECK(segment_sentences(doc("Revenue grew. Costs fell.")).size() == 2);
  SUBCASE("initialisms and abbreviations do not end a sentence") {
    const auto s = segment_sentences(doc("U.S. sales rose."));
    REQUIRE(s.size() == 1);
    CHECK(s[0].raw == "U.S. sales rose.");
    CHECK(segment_sentences(doc("Sales rose approx. five percent in the U.S. market. Costs fell.")).size() == 2);
  }
  CHECK(segment_sentences(doc("   \n\t ")).empty());
  SUBCASE("blank lines end a sentence and indices are ordinal") {
    const auto s = segment_sentences(doc("Overview\n\nRevenue grew! Did costs fall? Yes", "x"));
    REQUIRE(s.size() == 4);
    CHECK(indices(s) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(s[2].key() == "x#2");
    CHECK(s[1].cleaned == "Revenue grew!");
  }
}

TEST_CASE("clean_sentence") {
  CHECK(clean_sentence("we don't expect growth") == "we do not expect growth");
  CHECK(clean_sentence("see https://example.com for 2022 data") == "see for data");
  CHECK(clean_sentence("visit www.example.com today") == "visit today");
  CHECK(clean_sentence("revenue grew in the period") == "revenue grew in the period");
  SUBCASE("idempotent") {
    const std::vector<std::string> samples = {
        "We can't and won't   expand in 2021, see http://x.y/z.",
        "  Revenue of $4.5 million (up 12%) didn't   change. ",
        "it's the company's best year; we've grown 3x",
    };
    for (const auto& s : samples) CHECK(clean_sentence(clean_sentence(s)) == clean_sentence(s));
  }
}

TEST_CASE("filter_sentence_length boundaries") {
  auto make = [](std::size_t words) {
    Sentence s;
    s.word_count = words;
    s.index = words;
    return s;
  };
  const auto kept = filter_sentence_length({make(4), make(5), make(50), make(51)}, 5, 50);
  CHECK(indices(kept) == std::vector<std::size_t>{5, 50});
}

TEST_CASE("normalize_tokens") {
  const auto kw = KeywordList::financial();
  const LemmaTable lemmas(std::unordered_map<std::string, std::string>{{"operations", "operation"}});
  SUBCASE("lemmas and stopwords") {
    const auto t = normalize_tokens("Operations were profitable", StopwordList({"were"}), lemmas, kw);
    CHECK(t.tokens == std::vector<std::string>{"operation", "profitable"});
  }
  SUBCASE("all stopwords gives an empty document") {
    CHECK(normalize_tokens("the and of", StopwordList({"the", "and", "of"}), lemmas, kw).tokens.empty());
  }
  SUBCASE("keyword tokens survive the stopword list") {
    const auto t = normalize_tokens("cash is king", StopwordList({"cash", "is"}), lemmas, kw, "k");
    CHECK(t.key == "k");
    CHECK(t.tokens == std::vector<std::string>{"cash", "king"});
  }
  SUBCASE("tokens are lowercase and never stopwords") {
    const StopwordList stop({"we", "our"});
    const auto t = normalize_tokens("We grew OUR Revenue Base", stop, lemmas, kw);
    for (const auto& tok : t.tokens) {
      CHECK_FALSE(stop.contains(tok));
      CHECK(std::none_of(tok.begin(), tok.end(), [](char c) { return std::isupper(static_cast<unsigned char>(c)); }));
    }
  }
}

TEST_CASE("LemmaTable fallback") {
  const LemmaTable t(std::unordered_map<std::string, std::string>{{"sold", "sell"}});
  CHECK(t.lemmatize("sold") == "sell");
  CHECK(t.lemmatize("companies") == "company");
  CHECK(t.lemmatize("processes") == "process");
  CHECK(t.lemmatize("business") == "business");
  CHECK(t.lemmatize("cats") == "cats");  // shorter than five characters
  const auto kw = KeywordList::financial();
  CHECK(t.lemmatize("invested", &kw) == "invest");
}

TEST_CASE("stopword and lemma files") {
  const auto dir = synth::temp_dir("textprep_files");
  fts::io::write_text(dir / "a.txt", "# comment\nThe\n\nAND | conjunction\n");
  fts::io::write_text(dir / "b.txt", "of\n");
  fts::io::write_text(dir / "l.tsv", "# header\nwas\tbe\nbad line\n");
  const auto s = StopwordList::load_all({dir / "a.txt", dir / "b.txt"});
  CHECK(s.size() == 3);
  CHECK(s.contains("the"));
  CHECK(s.contains("and"));
  CHECK(s.contains("of"));
  const auto l = LemmaTable::load(dir / "l.tsv");
  CHECK(l.size() == 1);
  CHECK(l.lemmatize("was") == "be");
  CHECK_THROWS_AS(StopwordList::load(dir / "missing.txt"), fts::Error);
}

TEST_CASE("phrase detection") {
  // 10 documents of 40 tokens each; "working capital management" always
  // adjacent, followed by a token unique to the document.
  std::vector<TokenDoc> corpus;
  for (int d = 0; d < 10; ++d) {
    std::vector<std::string> t = {"working", "capital", "management", "next" + std::to_string(d)};
    for (int f = 0; f < 36; ++f) t.push_back("f" + std::to_string(d) + "_" + std::to_string(f));
    corpus.push_back(tokens("d" + std::to_string(d), t));
  }
  SUBCASE("score formula") {
    // (10 - 5) * 400 / (10 * 10) = 20
    CHECK(phrase_score(10, 10, 10, 400, 5) == doctest::Approx(20.0));
    CHECK(phrase_score(10, 10, 4, 400, 5) < 0.0);
  }
  SUBCASE("first pass joins the bigram") {
    const auto one = join_phrases(corpus, 5, 10.0);
    CHECK(one[0].tokens[0] == "working_capital");
    CHECK(one[0].tokens[1] == "management");
  }
  SUBCASE("second pass builds the trigram") {
    const auto two = detect_phrases(corpus, 5, 10.0);
    CHECK(two[3].tokens[0] == "working_capital_management");
    CHECK(two[3].tokens[1] == "next3");
    CHECK(detect_phrases(corpus, 5, 10.0)[3].tokens == two[3].tokens);  // deterministic
  }
  SUBCASE("a pair seen once is never joined") {
    std::vector<TokenDoc> c = corpus;
    c[0].tokens.insert(c[0].tokens.end(), {"rare", "pair"});
    const auto out = detect_phrases(c, 5, 10.0);
    const auto& t = out[0].tokens;
    CHECK(std::find(t.begin(), t.end(), "rare_pair") == t.end());
  }
}

TEST_CASE("filter_token_extremes") {
  const auto kw = KeywordList::financial();
  std::vector<TokenDoc> corpus;
  for (int d = 0; d < 10; ++d) {
    std::vector<std::string> t = {"everywhere", "liquidity", "common" + std::to_string(d % 2)};
    if (d == 0) t.push_back("lonely");
    corpus.push_back(tokens("d" + std::to_string(d), t));
  }
  const auto r = filter_token_extremes(corpus, 0.2, 0.99, 0.1, kw);
  CHECK(r.vocab.count("everywhere") == 0);  // df 1.0 > 0.99
  CHECK(r.vocab.count("lonely") == 0);      // df 0.1 < 0.2
  REQUIRE(r.vocab.count("liquidity") == 1);  // keyword, df 1.0
  CHECK(r.vocab.at("liquidity").df == 10);
  CHECK(r.vocab.at("common0").df == 5);
  CHECK(r.vocab.at("common0").cf == 5);
  for (const auto& [w, e] : r.vocab) {
    CHECK(e.tfidf_norm >= 0.0);
    CHECK(e.tfidf_norm <= 1.0 + 1e-12);
  }
  CHECK(r.docs[0].tokens == std::vector<std::string>{"liquidity", "common0"});

  std::vector<TokenDoc> hopeless = {tokens("a", {"same"}), tokens("b", {"same"})};
  CHECK_THROWS_AS(filter_token_extremes(hopeless, 0.0, 0.5, 0.1, kw), fts::Error);
  CHECK_THROWS_AS(filter_token_extremes(corpus, 0.5, 0.2, 0.1, kw), fts::Error);
}

TEST_CASE("cosine_document_filter") {
  SUBCASE("identical documents are all kept") {
    std::vector<TokenDoc> c(5, tokens("x", {"alpha", "beta", "beta"}));
    for (double m : mean_cosines(c)) CHECK(m == doctest::Approx(1.0));
    CHECK(cosine_document_filter(c, 0.6).kept.size() == 5);
  }
  SUBCASE("orthogonal document among nine identical ones is dropped") {
    std::vector<TokenDoc> c(9, tokens("same", {"alpha", "beta"}));
    c.push_back(tokens("odd", {"gamma", "delta"}));
    const auto m = mean_cosines(c);
    CHECK(m[0] == doctest::Approx(8.0 / 9.0));
    CHECK(m[9] == doctest::Approx(0.0));
    const auto r = cosine_document_filter(c, 0.6);
    CHECK(r.stage.name == "cosine");
    CHECK(r.stage.kept == 9);
    CHECK(r.stage.dropped == 1);
    CHECK(std::none_of(r.kept.begin(), r.kept.end(), [](const TokenDoc& t) { return t.key == "odd"; }));
  }
}

TEST_CASE("refine_sentences_by_keyword") {
  const auto kw = KeywordList::financial();
  auto sent = [](std::string id, std::size_t i, std::string text) {
    Sentence s;
    s.doc_id = std::move(id);
    s.index = i;
    s.cleaned = std::move(text);
    return s;
  };
  std::vector<Sentence> s = {sent("a", 0, "nothing here"), sent("a", 1, "plain words"),
                             sent("a", 2, "revenue grew"),  sent("a", 3, "more plain words"),
                             sent("a", 4, "the end"),       sent("b", 0, "cash rose"),
                             sent("b", 1, "then quiet"),    sent("b", 2, "still quiet")};
  const auto r = refine_sentences_by_keyword(s, kw);
  std::vector<std::string> keys;
  for (const auto& x : r) keys.push_back(x.key());
  CHECK(keys == std::vector<std::string>{"a#1", "a#2", "a#3", "b#0", "b#1"});
}

TEST_CASE("sentence and token files round trip") {
  const auto dir = synth::temp_dir("textprep_io");
  auto sents = segment_sentences(doc("Revenue grew strongly. Costs fell sharply.", "z"));
  write_sentences(sents, dir / "s.jsonl");
  const auto back = read_sentences(dir / "s.jsonl");
  REQUIRE(back.size() == sents.size());
  CHECK(back[1].key() == sents[1].key());
  CHECK(back[1].raw == sents[1].raw);
  CHECK(back[1].word_count == sents[1].word_count);

  write_token_docs({tokens("k", {"a", "b_c"})}, dir / "t.jsonl");
  const auto t = read_token_docs(dir / "t.jsonl");
  REQUIRE(t.size() == 1);
  CHECK(t[0].tokens == std::vector<std::string>{"a", "b_c"});
}
