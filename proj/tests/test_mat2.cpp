#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "expfact/mat2.hpp"
#include "expfact/matfn.hpp"
#include "support.hpp"

using namespace expfact;
using namespace std::complex_literals;

namespace {

Mat2 random_traceless(test::Rng& rng, double max_norm) {
  Mat2 m{rng.gaussian(), rng.gaussian(), rng.gaussian(), 0.0};
  m.d = -m.a;
  return m * (rng.uniform(0.0, max_norm) / m.norm());
}

// Eigen's Pade-based matrix exponential as an independent reference.
Mat2 eigen_exp(const Mat2& m) {
  Eigen::Matrix2cd x;
  x << m.a, m.b, m.c, m.d;
  const Eigen::Matrix2cd e = x.exp();
  return {e(0, 0), e(0, 1), e(1, 0), e(1, 1)};
}

}  // namespace

TEST_SUITE("mat2") {
  TEST_CASE("exp_sl2 examples") {
    CHECK(relative_deviation(exp_sl2(Mat2::zero()), Mat2::identity()) <= 1e-15);
    CHECK(relative_deviation(exp_sl2({0.0, 1.0, 0.0, 0.0}), {1.0, 1.0, 0.0, 1.0}) <= 1e-15);
    CHECK(relative_deviation(exp_sl2(Mat2::diag(1i * kPi, -1i * kPi)), -Mat2::identity()) <= 1e-15);
    CHECK(test::kind_of([] { exp_sl2(Mat2::identity()); }) == ErrorKind::NotTraceZero);
  }

  TEST_CASE("exp_oracle examples") {
    CHECK(relative_deviation(exp_oracle(Mat2::zero()), Mat2::identity()) <= 1e-15);
    CHECK(relative_deviation(exp_oracle(Mat2::diag(1.0, -1.0)), Mat2::diag(std::exp(1.0), std::exp(-1.0))) <= 1e-14);
  }

  TEST_CASE("property: closed form agrees with both oracles") {
    test::Rng rng(1000);
    for (int trial = 0; trial < 1000; ++trial) {
      const Mat2 m = random_traceless(rng, 5.0);
      const Mat2 e = exp_sl2(m);
      CHECK(relative_deviation(e, exp_oracle(m)) <= 1e-12);
      CHECK(relative_deviation(e, eigen_exp(m)) <= 1e-12);
    }
  }

  TEST_CASE("property: near-nilpotent inputs stay accurate") {
    test::Rng rng(51);
    for (int trial = 0; trial < 50; ++trial) {
      // S ((mu, 1), (0, -mu)) S^-1 has -det = mu^2 exactly up to rounding.
      const cplx mu = rng.in_disk(1e-6);
      Mat2 s{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
      s = s * (1.0 / std::sqrt(s.det()));
      const Mat2 m = conjugate(s, {mu, 1.0, 0.0, -mu});
      CHECK(std::abs(std::sqrt(-m.det())) <= 1e-6 * (1.0 + s.norm() * s.norm()));
      CHECK(relative_deviation(exp_sl2(m), exp_oracle(m)) <= 1e-12);
      CHECK(relative_deviation(exp_sl2(m), eigen_exp(m)) <= 1e-12);
    }
  }

  TEST_CASE("property: exp(M) exp(-M) is the identity and det exp(M) is 1") {
    test::Rng rng(20);
    for (int trial = 0; trial < 500; ++trial) {
      const Mat2 m = random_traceless(rng, 20.0);
      const Mat2 e = exp_sl2(m);
      const Mat2 p = e * exp_sl2(-m);
      // Entries grow like e^|mu|; scale the check by the product of norms.
      const double scale = e.norm() * exp_sl2(-m).norm();
      CHECK((p - Mat2::identity()).norm() <= 1e-12 * scale);
      CHECK(std::abs(e.det() - 1.0) <= 1e-12 * scale);
    }
  }

  TEST_CASE("conjugation examples") {
    const cplx a = 2.0 + 1i, b = -0.5, d = 1.0 / a;
    const Mat2 swap{0.0, 1.0, 1.0, 0.0};
    CHECK(relative_deviation(conjugate(swap, {a, b, 0.0, d}), {d, 0.0, b, a}) <= 1e-15);
    const Mat2 lower{1.0, 0.0, 1.0, 1.0};
    CHECK(relative_deviation(conjugate(lower, Mat2::diag(a, d)), {a, 0.0, a - d, d}) <= 1e-15);
    const Mat2 m{1.0, 2.0, 3.0, 4.0};
    CHECK(conjugate(Mat2::identity(), m) == m);
    CHECK(test::kind_of([&] { conjugate(Mat2::diag(1.0, 1e-9), m); }) == ErrorKind::SingularConjugator);
  }

  TEST_CASE("property: conjugation preserves trace and determinant and commutes with exp") {
    test::Rng rng(27);
    for (int trial = 0; trial < 300; ++trial) {
      const Mat2 th{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
      if (std::abs(th.det()) < 0.1) continue;
      const Mat2 m = random_traceless(rng, 3.0);
      const Mat2 c = conjugate(th, m);
      CHECK(std::abs(c.trace()) <= 1e-12 * (1.0 + c.norm()));
      CHECK(test::rel_err(c.det(), m.det()) <= 1e-12 * (1.0 + c.norm() * c.norm()));
      CHECK(relative_deviation(conjugate(th, exp_sl2(m)), exp_sl2(c)) <= 1e-11);
    }
  }

  TEST_CASE("inverse") {
    const Mat2 m{2.0, 1i, 3.0, 1.0};
    CHECK(relative_deviation(m * inverse(m), Mat2::identity()) <= 1e-15);
    CHECK(test::kind_of([] { inverse(Mat2::zero()); }) == ErrorKind::SingularConjugator);
  }

  TEST_CASE("grid conjugation matches the pointwise formula") {
    const Domain d = Domain::disk();
    const RatMat m{RationalFn::identity(), RationalFn(1.0), RationalFn(2.0), -RationalFn::identity()};
    const Mat2 th{1.0, 0.0, 1.0, 1.0};
    const GridMat c = conjugate(GridMat::constant(d, th), GridMat::sample(d, m));
    for (std::size_t i = 0; i < d.size(); i += 37)
      CHECK(relative_deviation(c.at(i), conjugate(th, m(d.points()[i]))) <= 1e-15);
  }
}
