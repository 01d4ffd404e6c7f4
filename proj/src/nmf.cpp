#include "fts/nmf.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "fts/error.hpp"

namespace fts::topics {

namespace {
constexpr double kEps = 1e-10;
}

NmfFactors nmf_fit(const Eigen::MatrixXd& A, const NmfOptions& opts) {
  if (!A.allFinite() || (A.array() < 0.0).any()) {
    throw Error(Errc::NegativeInput, "NMF input must be finite and nonnegative");
  }
  const auto k = static_cast<Eigen::Index>(opts.k);
  if (k < 1 || k >= std::min(A.rows(), A.cols())) {
    throw Error(Errc::BadRank, "k=" + std::to_string(opts.k) + " for a " + std::to_string(A.rows()) +
                                   "x" + std::to_string(A.cols()) + " matrix");
  }
  NmfFactors f;
  f.k = opts.k;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto draw = [&] {
    double v = 0.0;
    while (v == 0.0) v = unif(rng);
    return v;
  };
  f.W.resize(A.rows(), k);
  f.H.resize(k, A.cols());
  for (Eigen::Index i = 0; i < f.W.size(); ++i) f.W.data()[i] = draw();
  for (Eigen::Index i = 0; i < f.H.size(); ++i) f.H.data()[i] = draw();

  const double a_norm = A.norm();
  f.residuals.push_back((A - f.W * f.H).norm());
  for (std::size_t it = 0; it < opts.max_iters; ++it) {
    const Eigen::MatrixXd h_num = f.W.transpose() * A;
    const Eigen::MatrixXd h_den = (f.W.transpose() * f.W) * f.H;
    f.H.array() *= h_num.array() / (h_den.array() + kEps);
    const Eigen::MatrixXd w_num = A * f.H.transpose();
    const Eigen::MatrixXd w_den = f.W * (f.H * f.H.transpose());
    f.W.array() *= w_num.array() / (w_den.array() + kEps);
    const double r = (A - f.W * f.H).norm();
    const double prev = f.residuals.back();
    f.residuals.push_back(r);
    if (r <= 1e-14 * a_norm) break;
    if (prev > 0.0 && (prev - r) / prev < opts.tol) break;
  }
  return f;
}

double relative_residual(const Eigen::MatrixXd& A, const NmfFactors& f) {
  const double a = A.norm();
  return a > 0.0 ? (A - f.W * f.H).norm() / a : 0.0;
}

TopicRepresentation nmf_topics(const NmfFactors& f, const std::vector<std::string>& vocab,
                               std::size_t top_k) {
  if (static_cast<std::size_t>(f.H.cols()) != vocab.size()) {
    throw Error(Errc::DimensionMismatch, "vocabulary does not match H");
  }
  TopicRepresentation out;
  for (Eigen::Index t = 0; t < f.H.rows(); ++t) {
    std::vector<double> row(f.H.cols());
    for (Eigen::Index c = 0; c < f.H.cols(); ++c) row[static_cast<std::size_t>(c)] = f.H(t, c);
    TopicWords tw;
    tw.cluster = static_cast<int>(t);
    tw.words = top_k_row(vocab, row, top_k);
    tw.short_list = tw.words.size() < top_k;
    out.push_back(std::move(tw));
  }
  return out;
}

std::pair<Eigen::MatrixXd, std::vector<std::string>> doc_term_matrix(
    const std::vector<textprep::TokenDoc>& docs, std::size_t min_df) {
  std::map<std::string, std::size_t> df;
  for (const auto& d : docs) {
    std::set<std::string> seen(d.tokens.begin(), d.tokens.end());
    for (const auto& t : seen) ++df[t];
  }
  std::vector<std::string> vocab;
  std::map<std::string, Eigen::Index> index;
  for (const auto& [t, n] : df) {
    if (n >= min_df) {
      index.emplace(t, static_cast<Eigen::Index>(vocab.size()));
      vocab.push_back(t);
    }
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(docs.size()),
                                            static_cast<Eigen::Index>(vocab.size()));
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& t : docs[d].tokens) {
      if (auto it = index.find(t); it != index.end()) A(static_cast<Eigen::Index>(d), it->second) += 1.0;
    }
  }
  return {std::move(A), std::move(vocab)};
}

GridSearchResult grid_search_k(const Eigen::MatrixXd& A, const std::vector<std::string>& vocab,
                               std::vector<std::size_t> candidate_ks, const TopicScorer& scorer,
                               NmfOptions opts, std::size_t top_k) {
  if (candidate_ks.empty()) throw Error(Errc::InvalidParams, "no candidate topic counts");
  std::sort(candidate_ks.begin(), candidate_ks.end());
  candidate_ks.erase(std::unique(candidate_ks.begin(), candidate_ks.end()), candidate_ks.end());

  GridSearchResult result;
  double best = 0.0;
  for (auto k : candidate_ks) {
    opts.k = k;
    auto factors = nmf_fit(A, opts);
    const double score = scorer(nmf_topics(factors, vocab, top_k));
    result.scores.emplace_back(k, score);
    if (result.scores.size() == 1 || score > best) {
      best = score;
      result.best_k = k;
      result.best = std::move(factors);
    }
  }
  return result;
}

}  // namespace fts::topics
