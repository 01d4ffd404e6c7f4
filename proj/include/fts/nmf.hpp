#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fts/ctfidf.hpp"

namespace fts::topics {

struct NmfOptions {
  std::size_t k = 14;
  std::size_t max_iters = 500;
  double tol = 1e-6;  // relative residual improvement that stops the fit
  std::uint64_t seed = 42;
};

// A (rows x cols) ~= W (rows x k) * H (k x cols).
struct NmfFactors {
  Eigen::MatrixXd W;
  Eigen::MatrixXd H;
  std::size_t k = 0;
  std::vector<double> residuals;  // ||A - WH||_F, starting with the initial guess
};

// Lee-Seung multiplicative updates for the Frobenius objective.
NmfFactors nmf_fit(const Eigen::MatrixXd& A, const NmfOptions& opts);

double relative_residual(const Eigen::MatrixXd& A, const NmfFactors& f);

// Top words per topic from the rows of H (topics over columns of A).
TopicRepresentation nmf_topics(const NmfFactors& f, const std::vector<std::string>& vocab,
                               std::size_t top_k = 5);

// Document-term count matrix over a sorted vocabulary of all tokens.
std::pair<Eigen::MatrixXd, std::vector<std::string>> doc_term_matrix(
    const std::vector<textprep::TokenDoc>& docs, std::size_t min_df = 1);

using TopicScorer = std::function<double(const TopicRepresentation&)>;

struct GridSearchResult {
  std::size_t best_k = 0;
  std::vector<std::pair<std::size_t, double>> scores;
  NmfFactors best;
};

// Fits every candidate k with the same seed and keeps the best score; ties
// go to the smaller k.
GridSearchResult grid_search_k(const Eigen::MatrixXd& A, const std::vector<std::string>& vocab,
                               std::vector<std::size_t> candidate_ks, const TopicScorer& scorer,
                               NmfOptions opts = {}, std::size_t top_k = 5);

}  // namespace fts::topics
