#include <doctest.h>

#include <cmath>
#include <random>

#include "fts/circle_loss.hpp"
#include "fts/error.hpp"
#include "oracles.hpp"

using namespace fts::objective;

TEST_CASE("empty sides give zero loss and zero gradient") {
  const CircleLossParams p;
  CHECK(circle_loss({{0.9, 0.2}, {}}, p) == 0.0);
  CHECK(circle_loss({{}, {0.3}}, p) == 0.0);
  const auto g = circle_loss_grad({{0.9}, {}}, p);
  CHECK(g.d_positives == std::vector<double>{0.0});
}

TEST_CASE("loss at the optimum is log 2") {
  const CircleLossParams p{5.0, 0.25};
  CHECK(circle_loss({{1.25}, {-0.25}}, p) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(circle_loss({{1.25, 1.25}, {-0.25, -0.25}}, p) == doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("closed form on a small batch") {
  const CircleLossParams p{8.0, 0.2};
  const SimilarityBatch b{{0.7, 0.4}, {0.1, 0.5}};
  double sum_n = 0, sum_p = 0;
  for (double s : b.negatives) sum_n += std::exp(p.scale * std::max(0.0, s + p.margin) * (s - p.margin));
  for (double s : b.positives) {
    sum_p += std::exp(-p.scale * std::max(0.0, 1 + p.margin - s) * (s - 1 + p.margin));
  }
  CHECK(circle_loss(b, p) == doctest::Approx(std::log1p(sum_n * sum_p)).epsilon(1e-12));
}

TEST_CASE("no overflow at large scale") {
  const CircleLossParams p{256.0, 0.25};
  const double l = circle_loss({{-1.0, -0.9}, {1.0, 0.95}}, p);
  CHECK(std::isfinite(l));
  CHECK(l > 100.0);
  const auto g = circle_loss_grad({{-1.0}, {1.0}}, p);
  CHECK(std::isfinite(g.d_positives[0]));
  CHECK(std::isfinite(g.d_negatives[0]));
}

TEST_CASE("monotonicity") {
  const CircleLossParams p{10.0, 0.25};
  SUBCASE("raising a positive never raises the loss") {
    double prev = INFINITY;
    for (double s = -1.0; s <= 1.0; s += 0.05) {
      const double l = circle_loss({{s, 0.3}, {0.2}}, p);
      CHECK(l <= prev + 1e-12);
      prev = l;
    }
  }
  SUBCASE("raising a nonnegative negative never lowers the loss") {
    double prev = -INFINITY;
    for (double s = 0.0; s <= 1.0; s += 0.05) {
      const double l = circle_loss({{0.6}, {s, 0.1}}, p);
      CHECK(l >= prev - 1e-12);
      prev = l;
    }
  }
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0), scale(1.0, 32.0), margin(0.05, 0.45);
  std::uniform_int_distribution<int> size(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const CircleLossParams p{scale(rng), margin(rng)};
    SimilarityBatch b;
    for (int i = size(rng); i > 0; --i) b.positives.push_back(u(rng));
    for (int i = size(rng); i > 0; --i) b.negatives.push_back(u(rng));
    const auto g = circle_loss_grad(b, p);
    for (std::size_t i = 0; i < b.positives.size(); ++i) {
      auto f = [&](double x) {
        auto c = b;
        c.positives[i] = x;
        return circle_loss(c, p);
      };
      CHECK(oracle::rel_error(g.d_positives[i], oracle::five_point_difference(f, b.positives[i], 1e-4)) < 1e-5);
    }
    for (std::size_t j = 0; j < b.negatives.size(); ++j) {
      if (std::abs(b.negatives[j] + p.margin) < 1e-3) continue;  // kink at -m
      auto f = [&](double x) {
        auto c = b;
        c.negatives[j] = x;
        return circle_loss(c, p);
      };
      CHECK(oracle::rel_error(g.d_negatives[j], oracle::five_point_difference(f, b.negatives[j], 1e-4)) < 1e-5);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(circle_loss({{0.5}, {0.1}}, {0.0, 0.25}), fts::Error);
  CHECK_THROWS_AS(circle_loss({{0.5}, {0.1}}, {5.0, 0.5}), fts::Error);
  CHECK_THROWS_AS(circle_loss({{NAN}, {0.1}}, {}), fts::Error);
  CHECK(SimilarityBatch{{1.0}, {-1.0}}.in_range());
  CHECK_FALSE(SimilarityBatch{{1.25}, {}}.in_range());
}

TEST_CASE("curriculum schedule") {
  const auto a = curriculum_schedule(0, 100);
  CHECK(a.scale == 5.0);
  CHECK(a.margin == 0.25);
  const auto b = curriculum_schedule(100, 100);
  CHECK(b.scale == 16.0);
  CHECK(b.margin == 0.1);
  const auto mid = curriculum_schedule(50, 100);
  CHECK(mid.scale == doctest::Approx(10.5));
  CHECK(mid.margin == doctest::Approx(0.175));
  CHECK_THROWS_AS(curriculum_schedule(101, 100), fts::Error);
  CHECK_THROWS_AS(curriculum_schedule(0, 0), fts::Error);
}
