#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "expfact/contour.hpp"
#include "expfact/factorize.hpp"
#include "expfact/instance.hpp"
#include "support.hpp"

using namespace expfact;
using namespace std::complex_literals;

namespace {

const RationalFn kZ = RationalFn::identity();
const RationalFn kOne(1.0);
const RationalFn kZero;

RationalFn linear(cplx root) { return RationalFn(Polynomial({-root, 1.0})); }

Mat2 eigen_exp(const Mat2& m) {
  Eigen::Matrix2cd x;
  x << m.a, m.b, m.c, m.d;
  const Eigen::Matrix2cd e = x.exp();
  return {e(0, 0), e(0, 1), e(1, 0), e(1, 1)};
}

// Residual recomputed with an independent exponential.
double oracle_residual(const RatMat& A, const FactorizationResult& r) {
  const Domain& d = r.E.domain();
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    worst = std::max(worst, relative_deviation(eigen_exp(r.E.at(i)) * eigen_exp(r.F.at(i)), A(d.points()[i])));
  return worst;
}

double max_trace(const GridMat& m) { return m.trace().max_abs(); }

void check_result(const RatMat& A, const FactorizationResult& r, double tol) {
  CHECK(r.report.passed);
  CHECK(r.report.residual <= tol);
  CHECK(oracle_residual(A, r) <= tol);
  CHECK(max_trace(r.E) <= 1e-10);
  CHECK(max_trace(r.F) <= 1e-10);
  CHECK(r.report.max_certificate <= 1e-5);
}

}  // namespace

TEST_SUITE("factorize") {
  TEST_CASE("case II swaps an upper unipotent") {
    const RatMat A{kOne, kZ, kZero, kOne};
    const CaseReduction red = classify_and_reduce(A, Domain::disk());
    CHECK(red.tag == CaseTag::II);
    REQUIRE(red.trail.size() == 1);
    CHECK(identically_equal(red.reduced.c, kZ));
    CHECK(identically_equal(red.reduced.b, kZero));
  }

  TEST_CASE("case III lower-left entry is a - 1/a") {
    const RatMat A = RatMat::constant(Mat2::diag(2.0, 0.5));
    const CaseReduction red = classify_and_reduce(A, Domain::disk());
    CHECK(red.tag == CaseTag::III);
    CHECK(std::abs(red.reduced.c(0.3) - 1.5) <= 1e-12);
    CHECK(std::abs(red.reduced.a(0.3) - 2.0) <= 1e-12);
    CHECK(std::abs(red.reduced.d(0.3) - 0.5) <= 1e-12);
  }

  TEST_CASE("case I and trivial cases") {
    CHECK(classify_and_reduce(RatMat{kOne, kZero, kZ, kOne}, Domain::disk()).tag == CaseTag::I);
    CHECK(classify_and_reduce(RatMat::identity(), Domain::disk()).tag == CaseTag::TrivialPlusI);
    CHECK(classify_and_reduce(RatMat::constant(-Mat2::identity()), Domain::disk()).tag == CaseTag::TrivialMinusI);
    CHECK(test::kind_of([] { classify_and_reduce(RatMat{kZ, kZero, kZero, kOne}, test::annulus(0.5)); }) ==
          ErrorKind::NotUnimodular);
  }

  TEST_CASE("property: replaying the trail reconstructs A") {
    const Domain d = Domain::disk();
    const std::vector<RatMat> cases{
        {kOne, kZ, kZero, kOne},
        RatMat::constant(Mat2::diag(2.0, 0.5)),
        {kZ + RationalFn(2.0), kZero, kZero, kOne / (kZ + RationalFn(2.0))},
        {kOne, kZero, kZ, kOne},
    };
    for (const RatMat& A : cases) {
      const CaseReduction red = classify_and_reduce(A, d);
      for (const cplx z : {cplx(0.1, 0.2), cplx(-0.5), cplx(0.0, 0.7)})
        CHECK(relative_deviation(replay_trail(red.trail, red.reduced(z)), A(z)) <= 1e-10);
    }
  }

  TEST_CASE("delta examples") {
    const Domain d = Domain::disk();
    const GridFn zero = GridFn::constant(d, 0.0), one = GridFn::constant(d, 1.0);
    CHECK(choose_delta(zero, one) == 1.0);
    const auto [re1, dev1] = delta_margins(zero, one, 1.0);
    CHECK(re1 == doctest::Approx(std::exp(1.0) + std::exp(-1.0)).epsilon(1e-12));
    const double x = std::exp(-2.0);
    CHECK(dev1 == doctest::Approx(std::abs(x * x - 2.0 * x)).epsilon(1e-12));
    CHECK(choose_delta(zero, zero) == 2.0);
    CHECK(delta_margins(zero, zero, 1.0).second == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(delta_margins(zero, zero, 2.0).second == doctest::Approx(4.0 * std::exp(-4.0)).epsilon(1e-12));
    CHECK(test::kind_of([&] { choose_delta(GridFn::constant(d, 200.0), one); }) == ErrorKind::DeltaExhausted);
  }

  TEST_CASE("property: small data never needs delta above 4") {
    test::Rng rng(44);
    const Domain d = Domain::disk();
    for (int trial = 0; trial < 50; ++trial) {
      const cplx hc = rng.gaussian(), dc = rng.gaussian();
      // sup|d| sup|e^h| <= 1.
      const GridFn h = GridFn::from(d, [&](cplx z) { return 0.3 * hc * z; });
      const double eh = std::exp(0.3 * std::abs(hc));
      const GridFn dd = GridFn::from(d, [&](cplx z) { return dc * z / (std::abs(dc) * eh); });
      const double delta = choose_delta(h, dd);
      CHECK(delta <= 4.0);
      const auto [re, dev] = delta_margins(h, dd, delta);
      CHECK(re >= 0.1);
      CHECK(dev <= 0.4);
    }
  }

  TEST_CASE("identity and minus identity") {
    const Domain d = Domain::disk();
    const auto r = factorize_sl2(RatMat::identity(), d);
    CHECK(r.tag == CaseTag::TrivialPlusI);
    CHECK(r.report.residual == 0.0);
    CHECK(r.E.at(0) == Mat2::zero());
    CHECK(r.F.at(0) == Mat2::zero());
    const auto m = factorize_sl2(RatMat::constant(-Mat2::identity()), d);
    CHECK(m.tag == CaseTag::TrivialMinusI);
    CHECK(m.E.at(3) == Mat2::zero());
    CHECK(m.F.at(3) == Mat2::diag(1i * kPi, -1i * kPi));
    CHECK(m.report.residual <= 1e-15);
  }

  TEST_CASE("upper unipotent on the disk") {
    const RatMat A{kOne, kZ, kZero, kOne};
    const auto r = factorize_sl2(A, Domain::disk());
    CHECK(r.tag == CaseTag::II);
    check_result(A, r, 1e-8);
  }

  TEST_CASE("zero-bearing product on an annulus") {
    const RatMat A = RatMat{kOne, kZero, linear(0.7), kOne} * RatMat{kOne, RationalFn(2.0) * kZ, kZero, kOne};
    const Domain d = test::annulus(0.5);
    const auto r = factorize_sl2(A, d);
    CHECK(r.tag == CaseTag::I);
    CHECK(r.interior_zeros == 1);
    check_result(A, r, 1e-6);
    FactorOptions opts;
    opts.bass.method = SplitMethod::Dbar;
    const auto s = factorize_sl2(A, d, opts);
    check_result(A, s, 1e-4);
  }

  TEST_CASE("conjugation covariance") {
    const Domain d = test::annulus(0.5);
    const RatMat A = random_instance(3, d);
    const Mat2 th{2.0, 1.0, 1.0, 1.0};
    const RatMat B = RatMat::constant(th) * A * RatMat::constant(inverse(th));
    const auto r = factorize_sl2(B, d);
    const Mat2 ti = inverse(th);
    const GridMat E = conjugate(GridMat::constant(d, ti), r.E);
    const GridMat F = conjugate(GridMat::constant(d, ti), r.F);
    const VerifyReport rep = verify(GridMat::sample(d, A), E, F, 1e-8);
    CHECK(rep.passed);
  }

  TEST_CASE("general linear examples") {
    const Domain disk = Domain::disk();
    const auto r = factorize_gl2(RatMat::constant(Mat2::diag(2.0, 2.0)), disk);
    CHECK(r.report.residual <= 1e-8);
    CHECK(relative_deviation(r.E.at(5), Mat2::diag(std::log(2.0), std::log(2.0))) <= 1e-14);
    CHECK(r.F.at(5).norm() <= 1e-14);
    const Domain ann = test::annulus(0.5);
    CHECK(test::kind_of([&] { factorize_gl2(RatMat{kZ, kZero, kZero, kOne}, ann); }) == ErrorKind::NotNullHomotopic);
    // diag(z, 1/z) reduces to lower-left z - 1/z, which vanishes at +-1.
    const RatMat D{kZ, kZero, kZero, kOne / kZ};
    CHECK(test::kind_of([&] { factorize_gl2(D, ann); }) == ErrorKind::BoundaryZero);
    const Domain inner = test::annulus(0.5, 0.9);
    const auto s = factorize_gl2(D, inner);
    CHECK(s.tag == CaseTag::III);
    CHECK(s.report.residual <= 1e-8);
    CHECK(oracle_residual(D, s) <= 1e-8);
  }

  TEST_CASE("general linear input with a zero-winding determinant") {
    const Domain d = Domain::make({0.0, 1.0}, {{-0.4, 0.2}, {{0.4, 0.1}, 0.15}});
    // det A = z + 3 has no zeros in the domain and zero winding numbers.
    const RatMat A = RatMat{kZ + RationalFn(3.0), kZero, kZero, kOne} * random_instance(11, d);
    const auto r = factorize_gl2(A, d);
    CHECK(r.report.passed);
    CHECK(oracle_residual(A, r) <= 1e-8);
    CHECK(r.report.max_certificate <= 1e-5);
  }

  TEST_CASE("verify flags a perturbed factor") {
    const Domain d = Domain::disk();
    const RatMat A{kOne, kZ, kZero, kOne};
    const auto r = factorize_sl2(A, d);
    const GridMat A0 = GridMat::sample(d, A);
    CHECK(verify(A0, r.E, r.F).passed);
    GridMat F = r.F;
    F.b[0] += 1e-3;
    const VerifyReport bad = verify(A0, r.E, F);
    CHECK(bad.residual >= 1e-4);
    CHECK_FALSE(bad.passed);
    const GridMat I = GridMat::constant(d, Mat2::identity()), Z = GridMat::constant(d, Mat2::zero());
    const VerifyReport id = verify(I, Z, Z);
    CHECK(id.residual == 0.0);
    CHECK(id.passed);
  }

  TEST_CASE("instance generator") {
    const Domain disk = Domain::disk();
    const RatMat A = random_instance(0, disk);
    for (const cplx z : {cplx(0.1, 0.2), cplx(-0.6, 0.3), cplx(0.9)}) CHECK(std::abs(A(z).det() - 1.0) <= 1e-10);
    const RatMat B = random_instance(0, disk);
    CHECK(identically_equal(A.a, B.a, 0.0));
    CHECK(identically_equal(A.c, B.c, 0.0));
    const Domain ann = test::annulus(0.5);
    ZeroPlan plan;
    plan.locations = {0.7, -0.7};
    const RatMat C = random_instance(1, ann, plan);
    const ZeroSet zs = zeros_in_domain(C.c, ann);
    REQUIRE(zs.zeros.size() == 2);
    CHECK(std::abs(zs.zeros[0].location + 0.7) <= 1e-8);
    CHECK(std::abs(zs.zeros[1].location - 0.7) <= 1e-8);
  }

  TEST_CASE("property: generated instances factor on every domain") {
    for (const std::string name : {"disk", "annulus", "two-hole"}) {
      const Domain d = standard_domain(name);
      for (std::uint64_t seed = 100; seed < 103; ++seed) {
        const RatMat A = random_instance(seed, d);
        const auto r = factorize_sl2(A, d);
        check_result(A, r, r.tol);
        CHECK(r.delta_min_real >= 0.1);
        CHECK(r.delta_max_dev <= 0.4);
        CHECK(r.min_re_theta > 0.0);
        ZeroPlan plan;
        plan.count = 2;
        const RatMat Z = random_instance(seed, d, plan);
        const auto s = factorize_sl2(Z, d);
        CHECK(s.interior_zeros == 2);
        check_result(Z, s, 1e-6);
      }
    }
  }

  TEST_CASE("factorization is deterministic") {
    const Domain d = test::annulus(0.5);
    ZeroPlan plan;
    plan.count = 1;
    const RatMat A = random_instance(9, d, plan);
    const auto r1 = factorize_sl2(A, d), r2 = factorize_sl2(A, d);
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(r1.E.at(i) == r2.E.at(i));
      CHECK(r1.F.at(i) == r2.F.at(i));
    }
  }

  TEST_CASE("sampled input without interior zeros") {
    const Domain d = test::annulus(0.5);
    const RatMat A = random_instance(5, d);
    const auto r = factorize_sl2(GridMat::sample(d, A));
    CHECK(r.report.passed);
    ZeroPlan plan;
    plan.count = 1;
    const RatMat Z = random_instance(5, d, plan);
    CHECK(test::kind_of([&] { factorize_sl2(GridMat::sample(d, Z)); }) == ErrorKind::GridOnlyBassUnsupported);
  }
}
