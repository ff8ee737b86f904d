#include <doctest.h>

#include "expfact/contour.hpp"
#include "expfact/logm.hpp"
#include "support.hpp"

using namespace expfact;
using namespace std::complex_literals;

TEST_SUITE("logm") {
  TEST_CASE("spectral projection of a diagonal matrix") {
    const Mat2 p = spectral_projection(Mat2::diag(2.0, 0.5), std::log(2.0));
    CHECK(relative_deviation(p, Mat2::diag(1.0, 0.0)) <= 1e-15);
    const Mat2 f = log_with_eigenvalue(Mat2::diag(2.0, 0.5), std::log(2.0));
    CHECK(relative_deviation(f, Mat2::diag(std::log(2.0), -std::log(2.0))) <= 1e-15);
  }

  TEST_CASE("identity and unipotent inputs have no eigenvalue gap") {
    CHECK(test::kind_of([] { spectral_projection(Mat2::identity(), 0.0); }) == ErrorKind::DegenerateEigenvalues);
    CHECK(test::kind_of([] { spectral_projection(Mat2::identity(), 2i * kPi); }) ==
          ErrorKind::DegenerateEigenvalues);
    CHECK(test::kind_of([] { log_with_eigenvalue(Mat2{1.0, 1.0, 0.0, 1.0}, 0.0); }) ==
          ErrorKind::DegenerateEigenvalues);
  }

  TEST_CASE("a value that is not an eigenvalue is rejected") {
    CHECK(test::kind_of([] { spectral_projection(Mat2::diag(2.0, 0.5), std::log(3.0)); }) ==
          ErrorKind::NotAnEigenvalue);
  }

  TEST_CASE("rotation by a third of pi") {
    const double t = kPi / 3.0;
    const Mat2 b{std::cos(t), std::sin(t), -std::sin(t), std::cos(t)};
    const Mat2 p = spectral_projection(b, 1i * t);
    CHECK(relative_deviation(p, Mat2{0.5, -0.5i, 0.5i, 0.5}) <= 1e-14);
    CHECK(relative_deviation(p * p, p) <= 1e-10);
    const Mat2 rebuilt = std::exp(1i * t) * p + std::exp(-1i * t) * (Mat2::identity() - p);
    CHECK(relative_deviation(rebuilt, b) <= 1e-10);
  }

  TEST_CASE("round trip of a rotation generator") {
    const Mat2 f0{0.0, kPi / 3.0, -kPi / 3.0, 0.0};
    const Mat2 f = log_with_eigenvalue(exp_oracle(f0), 1i * kPi / 3.0);
    CHECK(relative_deviation(f, f0) <= 1e-10);
  }

  TEST_CASE("property: round trip and sign coherence") {
    test::Rng rng(1001);
    int checked = 0;
    while (checked < 1000) {
      Mat2 f0{rng.gaussian(), rng.gaussian(), rng.gaussian(), 0.0};
      f0.d = -f0.a;
      const cplx lam = std::sqrt(-f0.det());
      if (std::abs(lam.imag()) >= kPi) continue;
      if (std::abs(std::exp(lam) - std::exp(-lam)) <= 1e-3) continue;
      const Mat2 b = exp_oracle(f0);
      const Mat2 f = log_with_eigenvalue(b, lam);
      CHECK(relative_deviation(f, f0) <= 1e-9);
      const Mat2 p = spectral_projection(b, lam);
      CHECK(std::abs(f.trace()) <= 1e-12 * std::abs(lam) * (2.0 * p - Mat2::identity()).norm());
      CHECK(relative_deviation(exp_sl2(f), b) <= 1e-10);
      // The opposite branch selects I - P and returns the same logarithm.
      CHECK(relative_deviation(log_with_eigenvalue(b, -lam), f) <= 1e-10);
      CHECK(relative_deviation(spectral_projection(b, -lam), Mat2::identity() - p) <= 1e-10 * (1.0 + p.norm()));
      CHECK(relative_deviation(p * p, p) <= 1e-10 * (1.0 + p.norm()));
      ++checked;
    }
  }

  TEST_CASE("grid logarithm keeps holomorphy") {
    const Domain d = Domain::disk();
    const GridFn z = GridFn::sample(d, RationalFn::identity());
    const GridFn lam = z * cplx(0.5) + 1.0;
    const GridMat f0 = GridMat::from(d, [&](std::size_t i) { return Mat2::diag(lam[i], -lam[i]) + Mat2{0.0, 0.3 * z[i], 0.0, 0.0}; });
    const GridMat b = f0.map(exp_sl2);
    const GridMat f = log_with_eigenvalue(b, lam);
    double worst = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) worst = std::max(worst, relative_deviation(f.at(i), f0.at(i)));
    CHECK(worst <= 1e-10);
    const double eps = std::max({holomorphy_residual(b.a), holomorphy_residual(b.b), holomorphy_residual(b.d),
                                 holomorphy_residual(lam)});
    for (const GridFn* e : {&f.a, &f.b, &f.c, &f.d}) CHECK(holomorphy_residual(*e) <= 10.0 * std::max(eps, 1e-14));
  }

  TEST_CASE("logarithm is deterministic") {
    const Mat2 b = exp_sl2({0.3, 1.0, 0.2, -0.3});
    const cplx lam = std::sqrt(-Mat2{0.3, 1.0, 0.2, -0.3}.det());
    CHECK(log_with_eigenvalue(b, lam) == log_with_eigenvalue(b, lam));
  }
}
