#pragma once

#include <cstddef>
#include <filesystem>

#include <Eigen/Dense>

#include "fts/vectors.hpp"

namespace fts::reduce {

struct Pca {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;  // dim x n_components, unit columns
  Eigen::VectorXd variances;   // descending
};

// Mean-centres the rows and keeps the top eigenvectors of the sample
// covariance. Each component is flipped so that its largest-magnitude entry
// is positive.
Pca fit_pca(const vectors::EmbeddingMatrix& m, std::size_t n_components);
vectors::EmbeddingMatrix project(const Pca& pca, const vectors::EmbeddingMatrix& m);

// fit_pca + project. Throws RankDeficient unless rows > n_components and
// n_components <= dim.
vectors::EmbeddingMatrix reduce(const vectors::EmbeddingMatrix& m, std::size_t n_components = 10);

// Loads vectors reduced out of process; their dimension must match.
vectors::EmbeddingMatrix accept_external_reduction(const std::filesystem::path& path,
                                                   std::size_t n_components = 10);

}  // namespace fts::reduce
