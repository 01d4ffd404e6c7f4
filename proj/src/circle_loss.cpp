#include "fts/circle_loss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fts/error.hpp"

namespace fts::objective {

namespace {

void check(const CircleLossParams& p) {
  if (!p.valid()) {
    throw Error(Errc::InvalidParams, "scale=" + std::to_string(p.scale) +
                                         " margin=" + std::to_string(p.margin));
  }
}

void check_finite(const SimilarityBatch& b) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(b.positives.begin(), b.positives.end(), finite) ||
      !std::all_of(b.negatives.begin(), b.negatives.end(), finite)) {
    throw Error(Errc::InvalidParams, "non-finite similarity score");
  }
}

// Exponent arguments of both sums.
struct Logits {
  std::vector<double> pos;
  std::vector<double> neg;
};

Logits logits(const SimilarityBatch& b, const CircleLossParams& p) {
  const double opt_p = 1.0 + p.margin;
  const double opt_n = -p.margin;
  const double delta_p = 1.0 - p.margin;
  const double delta_n = p.margin;
  Logits z;
  z.pos.reserve(b.positives.size());
  z.neg.reserve(b.negatives.size());
  for (double s : b.positives) {
    const double alpha = std::max(0.0, opt_p - s);
    z.pos.push_back(-p.scale * alpha * (s - delta_p));
  }
  for (double s : b.negatives) {
    const double alpha = std::max(0.0, s - opt_n);
    z.neg.push_back(p.scale * alpha * (s - delta_n));
  }
  return z;
}

double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - m);
  return m + std::log(acc);
}

// log(1 + e^x) without overflow.
double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

bool CircleLossParams::valid() const noexcept {
  return std::isfinite(scale) && scale > 0.0 && margin > 0.0 && margin < 0.5;
}

bool SimilarityBatch::in_range() const noexcept {
  auto ok = [](double v) { return v >= -1.0 && v <= 1.0; };
  return std::all_of(positives.begin(), positives.end(), ok) &&
         std::all_of(negatives.begin(), negatives.end(), ok);
}

double circle_loss(const SimilarityBatch& batch, const CircleLossParams& params) {
  check(params);
  check_finite(batch);
  if (batch.positives.empty() || batch.negatives.empty()) return 0.0;
  const auto z = logits(batch, params);
  return softplus(log_sum_exp(z.neg) + log_sum_exp(z.pos));
}

CircleLossGrad circle_loss_grad(const SimilarityBatch& batch, const CircleLossParams& params) {
  check(params);
  check_finite(batch);
  CircleLossGrad g;
  g.d_positives.assign(batch.positives.size(), 0.0);
  g.d_negatives.assign(batch.negatives.size(), 0.0);
  if (batch.positives.empty() || batch.negatives.empty()) return g;

  const auto z = logits(batch, params);
  const double lse_p = log_sum_exp(z.pos);
  const double lse_n = log_sum_exp(z.neg);
  const double outer = sigmoid(lse_p + lse_n);
  const double m = params.margin;
  const double gamma = params.scale;

  for (std::size_t i = 0; i < batch.positives.size(); ++i) {
    const double s = batch.positives[i];
    const double alpha = 1.0 + m - s;
    // d/ds [-g * alpha(s) * (s - 1 + m)] with alpha' = -1 inside the clamp
    const double dz = alpha > 0.0 ? -gamma * (alpha - (s - 1.0 + m)) : 0.0;
    g.d_positives[i] = outer * std::exp(z.pos[i] - lse_p) * dz;
  }
  for (std::size_t j = 0; j < batch.negatives.size(); ++j) {
    const double s = batch.negatives[j];
    const double alpha = s + m;
    const double dz = alpha > 0.0 ? gamma * (alpha + (s - m)) : 0.0;
    g.d_negatives[j] = outer * std::exp(z.neg[j] - lse_n) * dz;
  }
  return g;
}

CircleLossParams curriculum_schedule(std::size_t step, std::size_t total_steps,
                                     CurriculumEndpoint start, CurriculumEndpoint end) {
  if (total_steps == 0 || step > total_steps) {
    throw Error(Errc::StepOutOfRange,
                "step " + std::to_string(step) + " of " + std::to_string(total_steps));
  }
  if (step == 0) return {start.scale, start.margin};
  if (step == total_steps) return {end.scale, end.margin};
  const double t = static_cast<double>(step) / static_cast<double>(total_steps);
  return {start.scale + t * (end.scale - start.scale), start.margin + t * (end.margin - start.margin)};
}

}  // namespace fts::objective
