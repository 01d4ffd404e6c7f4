#pragma once

#include <cstddef>
#include <vector>

namespace fts::objective {

struct CircleLossParams {
  double scale = 5.0;   // gamma
  double margin = 0.25; // m

  // scale > 0 and 0 < margin < 0.5
  bool valid() const noexcept;
};

// Cosine similarities of positive and negative pairs for one anchor/batch.
struct SimilarityBatch {
  std::vector<double> positives;
  std::vector<double> negatives;

  // All entries within [-1, 1].
  bool in_range() const noexcept;
};

struct CircleLossGrad {
  std::vector<double> d_positives;
  std::vector<double> d_negatives;
};

// Unified circle loss
//   L = log(1 + sum_j exp(g*an_j*(sn_j - m)) * sum_i exp(-g*ap_i*(sp_i - (1 - m))))
// with ap = max(0, 1 + m - sp), an = max(0, sn + m). Evaluated as
// softplus(lse_n + lse_p); zero when either side is empty.
double circle_loss(const SimilarityBatch& batch, const CircleLossParams& params);

// Partial derivatives of circle_loss with the adaptive weights differentiated
// as functions of the scores (zero slope past the clamp).
CircleLossGrad circle_loss_grad(const SimilarityBatch& batch, const CircleLossParams& params);

struct CurriculumEndpoint {
  double scale;
  double margin;
};

// Linear interpolation from `start` at step 0 to `end` at total_steps.
CircleLossParams curriculum_schedule(std::size_t step, std::size_t total_steps,
                                     CurriculumEndpoint start = {5.0, 0.25},
                                     CurriculumEndpoint end = {16.0, 0.1});

}  // namespace fts::objective
