#include <doctest.h>

#include "fts/error.hpp"
#include "fts/metrics.hpp"
#include "fts/nmf.hpp"
#include "synthetic.hpp"

using namespace fts::topics;

TEST_CASE("rank-one matrix is reconstructed") {
  Eigen::VectorXd u(5), v(6);
  u << 1, 2, 3, 4, 5;
  v << 0.5, 1, 0, 2, 3, 1;
  const Eigen::MatrixXd A = u * v.transpose();
  const auto f = nmf_fit(A, {1, 2000, 0.0, 42});
  CHECK(relative_residual(A, f) < 1e-6);
  CHECK((f.W.array() >= 0).all());
  CHECK((f.H.array() >= 0).all());
}

TEST_CASE("residual never increases") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto A = synth::random_nonnegative(20, 15, seed);
    const auto f = nmf_fit(A, {4, 200, 0.0, seed});
    REQUIRE(f.residuals.size() >= 2);
    for (std::size_t i = 1; i < f.residuals.size(); ++i) {
      CHECK(f.residuals[i] <= f.residuals[i - 1] * (1 + 1e-12));
    }
  }
}

TEST_CASE("seeded fits are deterministic") {
  const auto A = synth::random_nonnegative(12, 9, 4);
  const auto a = nmf_fit(A, {3, 50, 1e-6, 7});
  const auto b = nmf_fit(A, {3, 50, 1e-6, 7});
  CHECK(a.W == b.W);
  CHECK(a.H == b.H);
}

TEST_CASE("input validation") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Ones(4, 4);
  CHECK_THROWS_AS(nmf_fit(A, {4, 10, 0.0, 1}), fts::Error);
  CHECK_THROWS_AS(nmf_fit(A, {0, 10, 0.0, 1}), fts::Error);
  A(1, 1) = -1;
  CHECK_THROWS_AS(nmf_fit(A, {2, 10, 0.0, 1}), fts::Error);
}

TEST_CASE("doc-term matrix") {
  const std::vector<fts::textprep::TokenDoc> docs = {{"a", {"x", "y", "x"}}, {"b", {"y", "z"}}};
  auto [A, vocab] = doc_term_matrix(docs);
  CHECK(vocab == std::vector<std::string>{"x", "y", "z"});
  CHECK(A(0, 0) == 2);
  CHECK(A(1, 2) == 1);
  auto [B, v2] = doc_term_matrix(docs, 2);
  CHECK(v2 == std::vector<std::string>{"y"});
  CHECK(B.cols() == 1);
}

TEST_CASE("grid search finds the planted topic count") {
  const auto docs = synth::planted_grid_corpus();
  auto [A, vocab] = doc_term_matrix(docs);
  const TopicScorer scorer = [&](const TopicRepresentation& t) {
    return fts::metrics::npmi_coherence(word_lists(t), docs, {50, 5, 1e-12}).mean;
  };
  const auto g = grid_search_k(A, vocab, {4, 2, 3}, scorer, {0, 1000, 1e-6, 1});
  CHECK(g.best_k == 3);
  REQUIRE(g.scores.size() == 3);
  CHECK(g.scores[0].first == 2);
  const auto topics = nmf_topics(g.best, vocab, 5);
  CHECK(topics.size() == 3);
  CHECK_THROWS_AS(grid_search_k(A, vocab, {}, scorer), fts::Error);
}
