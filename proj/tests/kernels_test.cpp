#include <doctest.h>

#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "kernels.hpp"

using namespace frcone;

namespace {

FRParams single(const Rational& b, const Rational& c) {
  FRParams p;
  p.n = 2;
  p.a = {0, 0};
  p.b = {b, b};
  p.c = {c, c};
  return p;
}

TubePoint on_axis(double height) { return TubePoint::from_parts({0, 0}, {0, height}); }

}  // namespace

TEST_CASE("cpow on the principal branch") {
  const auto root2 = cpow({2.0, 0.0}, Rational(1, 2));
  CHECK(root2.real() == doctest::Approx(std::numbers::sqrt2).epsilon(1e-15));
  CHECK(root2.imag() == 0.0);
  for (const Rational& e : {Rational(0), Rational(7, 3), Rational(-5, 2)}) {
    const auto one = cpow({1.0, 0.0}, e);
    CHECK(one.real() == doctest::Approx(1.0));
    CHECK(one.imag() == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(cpow({-4.0, 0.0}, Rational(1, 2)), BranchCutError);
  CHECK_THROWS_AS(cpow({0.0, 0.0}, Rational(1, 2)), BranchCutError);
  // just above the cut the argument is close to +π
  const auto above = cpow({-4.0, 1e-12}, Rational(1, 2));
  CHECK(above.imag() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("kernel values at hand-computed points") {
  const TubePoint i1 = on_axis(1.0), i2 = on_axis(2.0);
  const auto k1 = kernel_T(i1, i1, Factor::first, single(0, 1));
  CHECK(k1.real() == doctest::Approx(0.25));
  CHECK(k1.imag() == doctest::Approx(0.0));
  CHECK(kernel_S(i1, i1, Factor::first, single(0, 1)) == doctest::Approx(0.25));

  const TubePoint p = TubePoint::from_parts({3, -1}, {0.5, 4});
  const TubePoint q = TubePoint::from_parts({-2, 7}, {1, 1.5});
  CHECK(kernel_T(p, q, Factor::second, single(0, 0)) == std::complex<double>(1.0, 0.0));
  CHECK(kernel_S(p, q, Factor::second, single(0, 0)) == 1.0);

  const auto k3 = kernel_T(i1, i2, Factor::first, single(1, 2));
  CHECK(k3.real() == doctest::Approx(4.0 / 81.0).epsilon(1e-14));
  CHECK(k3.imag() == doctest::Approx(0.0));
  CHECK(kernel_S(i1, i2, Factor::first, single(1, 2)) == doctest::Approx(4.0 / 81.0).epsilon(1e-14));
}

TEST_CASE("Q(z - conj u) stays off the branch cut on sampled pairs") {
  for (std::size_t n : {2u, 3u, 4u}) {
    const SampleBatch zs = sample_tube(n, 1.0, 100000, 1000 + n);
    const SampleBatch us = sample_tube(n, 3.0, 100000, 2000 + n);
    double worst = 0.0;
    for (std::size_t k = 0; k < zs.points.size(); ++k) {
      const auto q = q_conj_difference(view(zs.points[k]), view(us.points[k]));
      worst = std::max(worst, std::abs(std::arg(q)));
    }
    CAPTURE(n);
    CHECK(worst < std::numbers::pi - 1e-9);
  }
}

TEST_CASE("modulus of the T-kernel is the S-kernel") {
  FRParams params;
  params.n = 3;
  params.a = {1, 0};
  params.b = {Rational(3, 2), Rational(-1, 3)};
  params.c = {Rational(17, 4), Rational(5)};
  const SampleBatch zs = sample_tube(3, 1.0, 2000, 5);
  const SampleBatch us = sample_tube(3, 1.0, 2000, 6);
  for (std::size_t k = 0; k < zs.points.size(); ++k) {
    for (Factor f : {Factor::first, Factor::second}) {
      const double t = std::abs(kernel_T(zs.points[k], us.points[k], f, params));
      const double s = kernel_S(zs.points[k], us.points[k], f, params);
      CHECK(t == doctest::Approx(s).epsilon(1e-12));
    }
  }
}

TEST_CASE("S-kernel is homogeneous of degree 2(b - c) under dilation") {
  FRParams params;
  params.n = 2;
  params.a = {0, 0};
  params.b = {Rational(1, 2), 2};
  params.c = {Rational(7, 2), 4};
  const SampleBatch zs = sample_tube(2, 1.0, 500, 15);
  const SampleBatch us = sample_tube(2, 1.0, 500, 16);
  auto dilate = [](const TubePoint& p, double d) {
    std::vector<double> re(p.re().begin(), p.re().end());
    std::vector<double> im(p.im().coords().begin(), p.im().coords().end());
    for (auto& v : re) v *= d;
    for (auto& v : im) v *= d;
    return TubePoint::from_parts(re, im);
  };
  for (std::size_t k = 0; k < zs.points.size(); ++k) {
    for (double d : {0.5, 2.0, 5.0}) {
      for (Factor f : {Factor::first, Factor::second}) {
        const double bc = to_double(params.b[index(f)] - params.c[index(f)]);
        const double base = kernel_S(zs.points[k], us.points[k], f, params);
        const double moved = kernel_S(dilate(zs.points[k], d), dilate(us.points[k], d), f, params);
        CHECK(moved == doctest::Approx(std::pow(d, 2 * bc) * base).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("adjoint parameters") {
  SpaceSpec spaces;
  spaces.p = {2, 2};
  spaces.q = {2, 2};
  spaces.alpha = {0, 0};
  spaces.beta = {0, 0};
  FRParams params;
  params.n = 2;
  params.a = {1, 1};
  params.b = {1, 1};
  params.c = {4, 4};
  const AdjointResult adj = adjoint_params(params, spaces);
  CHECK(adj.params.a == RationalPair{1, 1});
  CHECK(adj.params.b == RationalPair{1, 1});
  CHECK(adj.params.c == params.c);

  params.a = {0, 0};
  params.b = {0, 0};
  const AdjointResult zero = adjoint_params(params, spaces);
  CHECK(zero.params.a == RationalPair{0, 0});
  CHECK(zero.params.b == RationalPair{0, 0});

  SUBCASE("transform twice returns the original exponents") {
    FRParams p;
    p.n = 3;
    p.a = {Rational(1, 3), Rational(-1, 5)};
    p.b = {Rational(2), Rational(7, 4)};
    p.c = {Rational(9, 2), Rational(6)};
    SpaceSpec s;
    s.p = {Rational(3, 2), 3};
    s.q = {Rational(5, 2), 4};
    s.alpha = {Rational(1, 2), Rational(-1, 3)};
    s.beta = {Rational(2, 3), Rational(0)};
    const AdjointResult once = adjoint_params(p, s);
    REQUIRE(once.spaces.has_value());
    CHECK(once.spaces->p[0] == Rational(5, 3));
    CHECK(once.spaces->q[1] == Rational(3, 2));
    CHECK(once.spaces->alpha == s.beta);
    CHECK(once.spaces->beta == s.alpha);
    const AdjointResult twice = adjoint_params(once.params, *once.spaces);
    CHECK(twice.params == p);
    REQUIRE(twice.spaces.has_value());
    CHECK(*twice.spaces == s);
  }

  SUBCASE("an L1 exponent has no finite conjugate space") {
    SpaceSpec s = spaces;
    s.p = {1, 2};
    CHECK_FALSE(adjoint_params(params, s).spaces.has_value());
  }
}
