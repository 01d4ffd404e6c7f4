#include "fts/reduce.hpp"

#include <string>

#include <Eigen/Eigenvalues>

#include "fts/error.hpp"

namespace fts::reduce {

Pca fit_pca(const vectors::EmbeddingMatrix& m, std::size_t n_components) {
  m.validate();
  const auto n = static_cast<Eigen::Index>(m.rows());
  const auto d = static_cast<Eigen::Index>(m.dim);
  const auto k = static_cast<Eigen::Index>(n_components);
  if (k == 0 || k > d || n <= k) {
    throw Error(Errc::RankDeficient, std::to_string(n) + " rows of dim " + std::to_string(d) +
                                         " cannot give " + std::to_string(k) + " components");
  }
  Eigen::MatrixXd x = Eigen::Map<const Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic,
                                                     Eigen::RowMajor>>(m.data.data(), n, d)
                          .cast<double>();
  Pca pca;
  pca.mean = x.colwise().mean().transpose();
  x.rowwise() -= pca.mean.transpose();
  const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw Error(Errc::RankDeficient, "eigen-solver failed");
  // Eigenvalues come back ascending.
  pca.components.resize(d, k);
  pca.variances.resize(k);
  for (Eigen::Index c = 0; c < k; ++c) {
    Eigen::VectorXd v = solver.eigenvectors().col(d - 1 - c);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    pca.components.col(c) = v;
    pca.variances(c) = std::max(0.0, solver.eigenvalues()(d - 1 - c));
  }
  return pca;
}

vectors::EmbeddingMatrix project(const Pca& pca, const vectors::EmbeddingMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  const auto d = static_cast<Eigen::Index>(m.dim);
  if (d != pca.mean.size()) throw Error(Errc::DimensionMismatch, "projection dimension differs");
  Eigen::MatrixXd x = Eigen::Map<const Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic,
                                                     Eigen::RowMajor>>(m.data.data(), n, d)
                          .cast<double>();
  x.rowwise() -= pca.mean.transpose();
  const Eigen::MatrixXd y = x * pca.components;

  vectors::EmbeddingMatrix out;
  out.dim = static_cast<std::uint32_t>(y.cols());
  out.keys = m.keys;
  out.data.resize(static_cast<std::size_t>(y.size()));
  for (Eigen::Index r = 0; r < y.rows(); ++r) {
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
      out.data[static_cast<std::size_t>(r * y.cols() + c)] = static_cast<float>(y(r, c));
    }
  }
  return out;
}

vectors::EmbeddingMatrix reduce(const vectors::EmbeddingMatrix& m, std::size_t n_components) {
  return project(fit_pca(m, n_components), m);
}

vectors::EmbeddingMatrix accept_external_reduction(const std::filesystem::path& path,
                                                   std::size_t n_components) {
  auto m = vectors::read_vectors(path);
  if (m.dim != n_components) {
    throw Error(Errc::DimensionMismatch, path.string() + " has dim " + std::to_string(m.dim) +
                                             ", expected " + std::to_string(n_components));
  }
  return m;
}

}  // namespace fts::reduce
