#include "expfact/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "expfact/error.hpp"

namespace expfact {

namespace {

BoundaryComponent sample_circle(const Circle& c, int n, int orientation) {
  BoundaryComponent comp;
  comp.circle = c;
  comp.orientation = orientation;
  comp.points.reserve(n);
  comp.params.reserve(n);
  comp.line_elements.reserve(n);
  const double dtheta = 2.0 * kPi / n;
  for (int k = 0; k < n; ++k) {
    const double theta = dtheta * k;
    const cplx e = std::polar(1.0, theta);
    comp.points.push_back(c.center + c.radius * e);
    comp.params.push_back(c.radius * theta);
    comp.line_elements.push_back(double(orientation) * kI * c.radius * e * dtheta);
  }
  return comp;
}

void check_radius(const Circle& c, const char* what) {
  if (!(c.radius > 0.0) || !std::isfinite(c.radius) || !std::isfinite(c.center.real()) ||
      !std::isfinite(c.center.imag())) {
    throw Error(ErrorKind::DegenerateRadius, std::string(what) + " circle has non-positive radius");
  }
}

}  // namespace

Domain Domain::make(Circle outer, std::vector<Circle> holes, int boundary_n,
                    double interior_spacing) {
  check_radius(outer, "outer");
  for (const auto& h : holes) check_radius(h, "hole");
  if (boundary_n < 8) throw Error(ErrorKind::InvalidInput, "boundary_n must be at least 8");
  if (interior_spacing <= 0.0) interior_spacing = outer.radius / 64.0;
  if (!std::isfinite(interior_spacing))
    throw Error(ErrorKind::InvalidInput, "interior_spacing must be finite");

  const double clearance = 1e-6 * outer.radius;
  for (std::size_t i = 0; i < holes.size(); ++i) {
    const auto& h = holes[i];
    if (std::abs(h.center - outer.center) + h.radius > outer.radius - clearance)
      throw Error(ErrorKind::HoleOutsideOuter, "hole " + std::to_string(i) + " is not inside the outer circle");
  }
  for (std::size_t i = 0; i < holes.size(); ++i)
    for (std::size_t j = i + 1; j < holes.size(); ++j)
      if (std::abs(holes[i].center - holes[j].center) < holes[i].radius + holes[j].radius + clearance)
        throw Error(ErrorKind::OverlappingHoles,
                    "holes " + std::to_string(i) + " and " + std::to_string(j) + " overlap");

  auto data = std::make_shared<Data>();
  data->outer = outer;
  data->holes = std::move(holes);
  data->boundary_n = boundary_n;
  data->spacing = interior_spacing;

  data->components.push_back(sample_circle(outer, boundary_n, +1));
  for (const auto& h : data->holes) data->components.push_back(sample_circle(h, boundary_n, -1));

  Domain probe(data);
  const int m = static_cast<int>(std::ceil(outer.radius / interior_spacing));
  for (int j = -m; j <= m; ++j) {
    for (int i = -m; i <= m; ++i) {
      const cplx z = outer.center + interior_spacing * cplx(i, j);
      if (probe.signed_membership(z) >= interior_spacing) {
        data->interior.push_back(z);
        data->lattice.emplace_back(i, j);
      }
    }
  }

  for (const auto& comp : data->components)
    data->all_points.insert(data->all_points.end(), comp.points.begin(), comp.points.end());
  data->all_points.insert(data->all_points.end(), data->interior.begin(), data->interior.end());
  return Domain(std::move(data));
}

double Domain::signed_membership(cplx z) const {
  double m = signed_circle_distance(data_->outer, z);
  for (const auto& h : data_->holes) m = std::min(m, -signed_circle_distance(h, z));
  return m;
}

std::ptrdiff_t Domain::find_point(cplx z) const {
  const auto& d = *data_;
  const cplx rel = (z - d.outer.center) / d.spacing;
  const int i = static_cast<int>(std::lround(rel.real()));
  const int j = static_cast<int>(std::lround(rel.imag()));
  const auto it = std::lower_bound(d.lattice.begin(), d.lattice.end(), std::pair{i, j},
                                   [](const auto& a, const auto& b) {
                                     return a.second != b.second ? a.second < b.second : a.first < b.first;
                                   });
  if (it != d.lattice.end() && *it == std::pair{i, j}) {
    const auto idx = static_cast<std::size_t>(it - d.lattice.begin());
    if (d.interior[idx] == z) return static_cast<std::ptrdiff_t>(boundary_size() + idx);
  }
  for (std::size_t k = 0; k < d.components.size(); ++k) {
    const auto& comp = d.components[k];
    const double theta = std::arg(z - comp.circle.center);
    const double t = (theta < 0 ? theta + 2 * kPi : theta) / (2 * kPi) * d.boundary_n;
    const auto idx = static_cast<std::size_t>(std::lround(t)) % static_cast<std::size_t>(d.boundary_n);
    if (comp.points[idx] == z) return static_cast<std::ptrdiff_t>(component_offset(k) + idx);
  }
  return -1;
}

}  // namespace expfact
