#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "errors.hpp"
#include "geometry.hpp"
#include "oracles.hpp"

using namespace frcone;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<double> random_cone_point(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 2.0);
  std::exponential_distribution<double> gap(1.0);
  std::vector<double> y(n);
  double r2 = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    y[j] = normal(rng);
    r2 += y[j] * y[j];
  }
  y[n - 1] = std::sqrt(r2) + gap(rng) + 1e-3;
  return y;
}

}  // namespace

TEST_CASE("g_form on hand-computed points") {
  CHECK(g_form(ConePoint({0, 1})) == 1.0);
  CHECK(g_form(ConePoint({3, 5})) == doctest::Approx(16.0).epsilon(1e-15));
  CHECK(g_form(ConePoint({1, 1, 2})) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("q_form on hand-computed points") {
  using C = std::complex<double>;
  const std::vector<C> a{C(0, 0), C(0, 1)};
  const std::vector<C> b{C(1, 0), C(0, 1)};
  const std::vector<C> c{C(0, 1), C(0, 1), C(0, 2)};
  CHECK(q_form(a) == C(1, 0));
  CHECK(q_form(b) == C(2, 0));
  CHECK(q_form(c) == C(2, 0));
}

TEST_CASE("in_cone is strict") {
  CHECK(in_cone(std::vector<double>{0, 1}));
  CHECK_FALSE(in_cone(std::vector<double>{1, 1}));
  CHECK_FALSE(in_cone(std::vector<double>{2, -3}));
}

TEST_CASE("constructors reject invalid points") {
  CHECK_THROWS_AS(ConePoint({1.0}), DomainError);
  CHECK_THROWS_AS(ConePoint({1, 1}), DomainError);
  CHECK_THROWS_AS(ConePoint({0, -1}), DomainError);
  CHECK_THROWS_AS(ConePoint({0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(TubePoint({0, 0, 0}, ConePoint({0, 1})), DomainError);
  CHECK_THROWS_AS(sample_tube(2, 0.0, 10, 1), DomainError);
  CHECK_THROWS_AS(sample_tube(2, -1.0, 10, 1), DomainError);
  CHECK_THROWS_AS(sample_tube(1, 1.0, 10, 1), DomainError);
}

TEST_CASE("Q(iy) equals g(y) up to cancellation error") {
  std::mt19937_64 rng(20240601);
  for (std::size_t n : {2u, 3u, 5u}) {
    for (int k = 0; k < 2000; ++k) {
      const auto y = random_cone_point(rng, n);
      const std::vector<double> zero(n, 0.0);
      const double g = g_form(std::span<const double>(y));
      const std::complex<double> q = q_form(zero, y);
      // both sides cancel yₙ² against |y′|², so the error scales with |y|², not with g
      double scale = 1.0;
      for (double v : y) scale += v * v;
      CHECK(std::abs(q.real() - g) <= 8 * kEps * scale * n);
      CHECK(q.imag() == 0.0);
    }
  }
}

TEST_CASE("g is 2-homogeneous") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 500; ++k) {
    auto y = random_cone_point(rng, 3);
    const double g = g_form(std::span<const double>(y));
    for (double t : {0.5, 3.0, 17.0}) {
      std::vector<double> ty = y;
      for (auto& v : ty) v *= t;
      CHECK(g_form(std::span<const double>(ty)) == doctest::Approx(t * t * g).epsilon(1e-12));
    }
  }
}

TEST_CASE("Q(z - conj u) is invariant under a common real shift") {
  const SampleBatch batch = sample_tube(3, 1.0, 400, 99);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 5.0);
  for (std::size_t k = 0; k + 1 < batch.points.size(); k += 2) {
    const TubePoint& z = batch.points[k];
    const TubePoint& u = batch.points[k + 1];
    std::vector<double> shift{normal(rng), normal(rng), normal(rng)};
    auto moved = [&](const TubePoint& p) {
      std::vector<double> re(p.re().begin(), p.re().end());
      for (std::size_t j = 0; j < 3; ++j) re[j] += shift[j];
      return TubePoint(re, p.im());
    };
    const TubePoint zs = moved(z), us = moved(u);
    const auto before = q_conj_difference(view(z), view(u));
    const auto after = q_conj_difference(view(zs), view(us));
    const double scale = std::abs(before) + 1.0;
    CHECK(std::abs(before - after) <= 1e-9 * scale * (1.0 + std::abs(shift[0]) + std::abs(shift[1]) + std::abs(shift[2])));
  }
}

TEST_CASE("sample_tube postconditions and determinism") {
  const SampleBatch a = sample_tube(2, 1.0, 1000, 7);
  REQUIRE(a.points.size() == 1000);
  REQUIRE(a.weights.size() == 1000);
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    CHECK(in_cone(a.points[k].im().coords()));
    CHECK(std::isfinite(a.weights[k]));
    CHECK(a.weights[k] > 0.0);
  }
  const SampleBatch b = sample_tube(2, 1.0, 1000, 7);
  CHECK(a.points == b.points);
  CHECK(a.weights == b.weights);
  CHECK(a.proposal == b.proposal);
  CHECK(a.seed == 7);
  const SampleBatch c = sample_tube(2, 1.0, 1000, 8);
  CHECK_FALSE(a.points == c.points);
}

TEST_CASE("draw returns the reciprocal of the density") {
  const Proposal proposal(3, 1.7, {0.5, -1.0, 2.0});
  std::mt19937_64 rng(11);
  std::vector<double> re(3), im(3);
  for (int k = 0; k < 1000; ++k) {
    const double w = proposal.draw(rng, re, im);
    const double product = w * proposal.density(re, im);
    // density() recovers t = yₙ − |y′| by subtraction, which loses digits when t ≪ yₙ
    const double t = im[2] - std::hypot(im[0], im[1]);
    CHECK_MESSAGE(std::abs(product - 1.0) < 1e-12 * (1.0 + im[2] / t), (product - 1.0));
  }
}

TEST_CASE("weighted mean of a box indicator matches the grid volume") {
  const TruncatedBox box{1.0, 2.0, 1.0};
  for (std::size_t n : {2u, 3u}) {
    const double exact = oracle::box_volume(n, box);
    const SampleBatch batch = sample_tube(n, 1.0, 400000, 2024 + n);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t k = 0; k < batch.points.size(); ++k) {
      const double v = box.contains(view(batch.points[k])) ? batch.weights[k] : 0.0;
      sum += v;
      sum_sq += v * v;
    }
    const double m = static_cast<double>(batch.points.size());
    const double mean = sum / m;
    const double se = std::sqrt((sum_sq / m - mean * mean) / (m - 1.0));
    CAPTURE(n);
    CAPTURE(exact);
    CHECK(std::abs(mean - exact) <= 3.0 * se);
  }
}
