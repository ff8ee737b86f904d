#include <doctest.h>

#include "expfact/contour.hpp"
#include "expfact/cousin.hpp"
#include "support.hpp"

using namespace expfact;
using namespace std::complex_literals;

namespace {

const std::vector<CoverDisk> kOrigin{{0.0, 1, 0.2}};

double overlap_error(const CousinSplit& s, const LocalFn& f) {
  double worst = 0.0;
  for (std::size_t j = 0; j < s.cover().size(); ++j) {
    const CoverDisk& w = s.cover()[j];
    for (const double scale : {0.5, 0.8})
      for (const cplx z : circle_points({w.center, scale * w.radius}, 64))
        worst = std::max(worst, std::abs(s.f1(z) - s.f2(j, z) - f(j, z)) / (1.0 + std::abs(f(j, z))));
  }
  return worst;
}

}  // namespace

TEST_SUITE("cousin") {
  TEST_CASE("a simple pole is its own principal part") {
    const LocalFn f = [](std::size_t, cplx z) { return 1.0 / z; };
    const auto s = cousin_split(f, kOrigin, Domain::disk(), SplitMethod::Exact);
    for (const cplx z : {cplx(0.5, 0.1), cplx(0.0, 0.1), cplx(-0.15)}) CHECK(std::abs(s->f1(z) - 1.0 / z) <= 1e-12);
    CHECK(std::abs(s->f2(0, 0.1)) <= 1e-12);
    CHECK(std::abs(s->f2(0, 0.0)) <= 1e-12);
  }

  TEST_CASE("a constant has no principal part") {
    const LocalFn f = [](std::size_t, cplx) { return cplx(4.0); };
    const auto s = cousin_split(f, kOrigin, Domain::disk(), SplitMethod::Exact);
    CHECK(std::abs(s->f1(0.5)) <= 1e-12);
    CHECK(std::abs(s->f2(0, 0.1) + 4.0) <= 1e-12);
  }

  TEST_CASE("higher-order poles at two centres") {
    const cplx p = 0.3, q = -0.4i;
    const LocalFn f = [&](std::size_t, cplx z) { return std::exp(z) / ((z - p) * (z - p)) + 2.0 / (z - q); };
    const std::vector<CoverDisk> cover{{p, 2, 0.15}, {q, 1, 0.15}};
    const auto s = cousin_split(f, cover, Domain::disk(), SplitMethod::Exact);
    const auto& ex = dynamic_cast<const ExactSplit&>(*s);
    // e^z / (z - p)^2 = e^p / (z - p)^2 + e^p / (z - p) + ...
    REQUIRE(ex.principal_coeffs(0).size() == 2);
    CHECK(std::abs(ex.principal_coeffs(0)[0] - std::exp(p)) <= 1e-12);
    CHECK(std::abs(ex.principal_coeffs(0)[1] - std::exp(p)) <= 1e-12);
    CHECK(std::abs(ex.principal_coeffs(1)[0] - 2.0) <= 1e-12);
    CHECK(overlap_error(*s, f) <= 1e-10);
  }

  TEST_CASE("cover disks must be disjoint and interior") {
    const LocalFn f = [](std::size_t, cplx z) { return 1.0 / z; };
    CHECK(test::kind_of([&] {
      cousin_split(f, {{0.0, 1, 0.3}, {0.4, 1, 0.3}}, Domain::disk(), SplitMethod::Exact);
    }) == ErrorKind::InvalidInput);
    CHECK(test::kind_of([&] { cousin_split(f, {{0.9, 1, 0.2}}, Domain::disk(), SplitMethod::Exact); }) ==
          ErrorKind::SupportTouchesBoundary);
  }

  TEST_CASE("exact and dbar splittings of e^z / z differ by a holomorphic function") {
    const Domain d = Domain::disk();
    const LocalFn f = [](std::size_t, cplx z) { return std::exp(z) / z; };
    const auto ex = cousin_split(f, kOrigin, d, SplitMethod::Exact);
    const auto db = cousin_split(f, kOrigin, d, SplitMethod::Dbar);
    CHECK(overlap_error(*ex, f) <= 1e-10);
    CHECK(overlap_error(*db, f) <= 1e-6);
    CHECK(holomorphy_residual(split_difference(*ex, *db, d)) <= 1e-5);
  }

  TEST_CASE("cross-method agreement on a multiply connected domain") {
    const Domain d = Domain::make({0.0, 1.0}, {{-0.4, 0.2}, {{0.4, 0.1}, 0.15}});
    const cplx p = 0.1 - 0.5i, q = 0.6i;
    const LocalFn f = [&](std::size_t, cplx z) { return 1.0 / ((z - p) * (z - q)) + std::exp(z); };
    const std::vector<CoverDisk> cover{{p, 1, 0.1}, {q, 1, 0.1}};
    const auto ex = cousin_split(f, cover, d, SplitMethod::Exact);
    const auto db = cousin_split(f, cover, d, SplitMethod::Dbar);
    CHECK(overlap_error(*ex, f) <= 1e-10);
    CHECK(overlap_error(*db, f) <= 1e-6);
    CHECK(holomorphy_residual(split_difference(*ex, *db, d)) <= 1e-5);
  }

  TEST_CASE("dbar pieces are holomorphic off the cutoff transition") {
    const Domain d = Domain::disk();
    const LocalFn f = [](std::size_t, cplx z) { return std::exp(z) / z; };
    const auto db = cousin_split(f, kOrigin, d, SplitMethod::Dbar);
    const auto& s = dynamic_cast<const DbarSplit&>(*db);
    CHECK(s.chi(0.0) == 0.0);
    CHECK(s.chi(0.5) == 1.0);
    // f2 near the centre: compare the Cauchy integral on a small circle.
    const Circle c{0.0, 0.05};
    const auto pts = circle_points(c, 128);
    cplx integral{};
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const cplx dz = 1i * (pts[k] - c.center) * (2.0 * kPi / pts.size());
      integral += s.f2(0, pts[k]) / (pts[k] - 0.01) * dz;
    }
    CHECK(std::abs(integral / (2.0 * kPi * 1i) - s.f2(0, 0.01)) <= 1e-6);
  }
}
