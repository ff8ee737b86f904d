#include <doctest.h>

#include <algorithm>

#include "expfact/contour.hpp"
#include "expfact/gridfn.hpp"
#include "expfact/polynomial.hpp"
#include "expfact/rational.hpp"
#include "expfact/roots.hpp"
#include "support.hpp"

using namespace expfact;
using namespace std::complex_literals;

namespace {

// Distance from each expected root to the nearest recovered location.
double max_recovery_error(const std::vector<cplx>& expected, const std::vector<Zero>& got) {
  double worst = 0.0;
  for (const cplx r : expected) {
    double best = 1e300;
    for (const auto& z : got) best = std::min(best, std::abs(z.location - r));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_SUITE("funcrep") {
  TEST_CASE("polynomial trims small coefficients and trailing zeros") {
    const Polynomial p({1.0, 2.0, 1e-20, 0.0});
    CHECK(p.degree() == 1);
    CHECK(Polynomial({0.0, 0.0}).is_zero());
  }

  TEST_CASE("rational evaluation") {
    const RationalFn f(Polynomial({1.0, 0.0, 1.0}));
    CHECK(std::abs(f(1i)) <= 1e-15);
    const RationalFn g(Polynomial({1.0}), Polynomial({-2.0, 1.0}));
    CHECK(std::abs(g(0.0) - cplx(-0.5)) <= 1e-15);
    CHECK(test::kind_of([&] { g(2.0); }) == ErrorKind::PoleInDomain);
  }

  TEST_CASE("denominator is normalized to be monic") {
    const RationalFn f(Polynomial({2.0}), Polynomial({1.0, 2.0}));
    CHECK(f.den().leading() == cplx(1.0));
    CHECK(std::abs(f(0.5) - cplx(1.0)) <= 1e-15);
  }

  TEST_CASE("attaching checks for poles on the closed domain") {
    const RationalFn f(Polynomial({1.0}), Polynomial({-0.5, 1.0}));
    CHECK(test::kind_of([&] { f.check_attached(Domain::disk()); }) == ErrorKind::PoleInDomain);
    CHECK_NOTHROW(f.check_attached(test::annulus(0.6)));
  }

  TEST_CASE("identity sampled on the unit circle returns the points") {
    const Domain d = Domain::disk();
    const GridFn z = GridFn::sample(d, RationalFn::identity());
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(z[i] == d.points()[i]);
  }

  TEST_CASE("roots of factored polynomials") {
    auto r = roots(Polynomial({-1.0, 0.0, 1.0}));
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0].location + 1.0) <= 1e-13);
    CHECK(std::abs(r[1].location - 1.0) <= 1e-13);
    const cplx half[] = {0.5, 0.5};
    r = roots(Polynomial::from_roots(half));
    REQUIRE(r.size() == 1);
    CHECK(r[0].multiplicity == 2);
    CHECK(std::abs(r[0].location - 0.5) <= 1e-12);
    CHECK(test::kind_of([] { roots(Polynomial({3.0})); }) == ErrorKind::InvalidInput);
  }

  TEST_CASE("degree-8 construct-then-recover") {
    test::Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<cplx> rs;
      while (rs.size() < 8) {
        const cplx z = rng.in_disk(2.0);
        if (std::all_of(rs.begin(), rs.end(), [&](cplx w) { return std::abs(w - z) > 1e-2; })) rs.push_back(z);
      }
      const auto got = roots(Polynomial::from_roots(rs, rng.gaussian()));
      CHECK(got.size() == 8);
      CHECK(max_recovery_error(rs, got) <= 1e-8);
    }
  }

  TEST_CASE("property: up to 12 separated roots are recovered") {
    test::Rng rng(12);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = rng.integer(1, 12);
      std::vector<cplx> rs;
      while (static_cast<int>(rs.size()) < n) {
        const cplx z = rng.in_disk(3.0);
        if (std::all_of(rs.begin(), rs.end(), [&](cplx w) { return std::abs(w - z) >= 1e-3; })) rs.push_back(z);
      }
      const auto got = roots(Polynomial::from_roots(rs));
      int total = 0;
      for (const auto& z : got) total += z.multiplicity;
      CHECK(total == n);
      CHECK(max_recovery_error(rs, got) <= 1e-8);
    }
  }

  TEST_CASE("zeros in a domain") {
    const Domain disk = Domain::disk();
    const auto z = zeros_in_domain(RationalFn::identity(), disk);
    REQUIRE(z.zeros.size() == 1);
    CHECK(std::abs(z.zeros[0].location) <= 1e-14);
    CHECK(test::kind_of([&] { zeros_in_domain(RationalFn(Polynomial({-1.0, 1.0})), disk); }) ==
          ErrorKind::BoundaryZero);
    CHECK(zeros_in_domain(RationalFn(Polynomial({-0.5, 1.0})), test::annulus(0.6)).empty());
    CHECK(test::kind_of([&] { zeros_in_domain(RationalFn(), disk); }) == ErrorKind::IdenticallyZero);
    // Double zero inside, simple zero outside.
    const cplx rs[] = {0.2, 0.2, 3.0};
    const auto m = zeros_in_domain(RationalFn(Polynomial::from_roots(rs)), disk);
    REQUIRE(m.zeros.size() == 1);
    CHECK(m.zeros[0].multiplicity == 2);
    CHECK(m.total_multiplicity() == 2);
  }

  TEST_CASE("Cauchy evaluation reproduces holomorphic samples") {
    const Domain disk = Domain::disk();
    CHECK(std::abs(cauchy_eval(GridFn::constant(disk, 1.0), 0.3) - 1.0) <= 1e-12);
    const GridFn z2 = GridFn::from(disk, [](cplx z) { return z * z; });
    CHECK(std::abs(cauchy_eval(z2, 0.3) - 0.09) <= 1e-10);
    const Domain ann = test::annulus(0.5);
    const GridFn inv = GridFn::from(ann, [](cplx z) { return 1.0 / z; });
    CHECK(std::abs(cauchy_eval(inv, 0.7) - 1.0 / 0.7) <= 1e-10);
    CHECK(test::kind_of([&] { cauchy_eval(z2, 0.999); }) == ErrorKind::TooCloseToBoundary);
  }

  TEST_CASE("holomorphy certificate separates holomorphic from non-holomorphic samples") {
    const Domain d = Domain::make({0.0, 1.0}, {{-0.4, 0.2}, {{0.4, 0.1}, 0.15}});
    const GridFn good = GridFn::from(d, [](cplx z) { return std::exp(z) / (z + 0.4); });
    const GridFn bad = GridFn::from(d, [](cplx z) { return std::conj(z); });
    CHECK(holomorphy_residual(good) <= 1e-9);
    CHECK(holomorphy_residual(bad) > 1e-2);
  }

  TEST_CASE("property: sampled rational functions carry small certificates") {
    test::Rng rng(202);
    const Domain domains[] = {Domain::disk(), test::annulus(0.5),
                              Domain::make({0.0, 1.0}, {{-0.4, 0.2}, {{0.4, 0.1}, 0.15}})};
    for (const Domain& d : domains)
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<cplx> num, den_roots;
        for (int k = 0; k < 4; ++k) num.push_back(rng.gaussian());
        // Poles outside the closed domain or inside a hole.
        den_roots.push_back(rng.in_disk(0.5, 2.5));
        if (!d.holes().empty()) den_roots.push_back(rng.in_disk(0.5 * d.holes()[0].radius, d.holes()[0].center));
        const RationalFn f(Polynomial(num), Polynomial::from_roots(den_roots));
        CHECK(holomorphy_residual(GridFn::sample(d, f)) <= 1e-9);
      }
  }

  TEST_CASE("winding numbers") {
    const Domain disk = Domain::disk();
    CHECK(winding_numbers(GridFn::sample(disk, RationalFn::identity())) == std::vector<int>{1});
    CHECK(winding_numbers(GridFn::constant(disk, 5.0)) == std::vector<int>{0});
    CHECK(winding_numbers(GridFn::from(disk, [](cplx z) { return z - 3.0; })) == std::vector<int>{0});
    const Domain ann = test::annulus(0.5);
    CHECK(winding_numbers(GridFn::from(ann, [](cplx z) { return z; })) == std::vector<int>{1, 1});
    CHECK(test::kind_of([&] { winding_numbers(GridFn::from(disk, [](cplx z) { return z - 1.0; })); }) ==
          ErrorKind::VanishesOnBoundary);
    const Domain coarse = Domain::make({0.0, 1.0}, {}, 8);
    CHECK(test::kind_of([&] { winding_numbers(GridFn::from(coarse, [](cplx z) { return std::pow(z, 5); })); }) ==
          ErrorKind::Undersampled);
  }

  TEST_CASE("property: winding numbers ignore nonvanishing constant factors") {
    test::Rng rng(31);
    const Domain d = Domain::make({0.0, 1.0}, {{-0.4, 0.2}, {{0.4, 0.1}, 0.15}});
    for (int trial = 0; trial < 20; ++trial) {
      const cplx a = rng.in_disk(0.2, -0.4), b = rng.in_disk(0.9);
      const GridFn f = GridFn::from(d, [&](cplx z) { return (z - a) * (z - b) * (z - 2.0); });
      if (f.min_abs() < 1e-3) continue;
      const cplx c = rng.gaussian() * 10.0;
      CHECK(winding_numbers(f) == winding_numbers(f * c));
    }
  }

  TEST_CASE("log continuation") {
    const Domain disk = Domain::disk();
    const GridFn c = log_continuation(GridFn::constant(disk, std::exp(2.0)));
    CHECK(max_abs_diff(c, GridFn::constant(disk, 2.0)) <= 1e-14);
    const GridFn z = GridFn::sample(disk, RationalFn::identity());
    const GridFn e = log_continuation(exp(z));
    CHECK(max_abs_diff(e, z) <= 1e-10);
    CHECK(test::kind_of([] { log_continuation(GridFn::from(test::annulus(0.5), [](cplx z) { return z; })); }) ==
          ErrorKind::NonzeroWinding);
  }

  TEST_CASE("property: log continuation inverts exp on multiply connected domains") {
    test::Rng rng(77);
    const Domain d = Domain::make({0.0, 1.0}, {{-0.4, 0.2}, {{0.4, 0.1}, 0.15}});
    for (int trial = 0; trial < 5; ++trial) {
      const cplx a = rng.gaussian() * 2.0, b = rng.gaussian();
      const GridFn f = GridFn::from(d, [&](cplx z) { return std::exp(a * z + b * z * z); });
      const GridFn eta = log_continuation(f);
      CHECK(max_abs_diff(exp(eta), f) <= 1e-9 * f.max_abs());
    }
  }

  TEST_CASE("contour coefficients") {
    const Circle c{0.0, 0.5};
    const auto pts = circle_points(c, 64);
    std::vector<cplx> v1, v2, v3;
    for (const cplx z : pts) {
      v1.push_back(1.0 / z);
      v2.push_back(1.0 / (z * z));
      v3.push_back(std::exp(z) / z);
    }
    CHECK(std::abs(contour_coeffs(v1, c, 1)[0] - 1.0) <= 1e-14);
    const auto k2 = contour_coeffs(v2, c, 2);
    CHECK(std::abs(k2[0]) <= 1e-14);
    CHECK(std::abs(k2[1] - 1.0) <= 1e-14);
    CHECK(std::abs(contour_coeffs(v3, c, 1)[0] - 1.0) <= 1e-12);
  }
}
