#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "expfact/types.hpp"

namespace expfact {

struct Circle {
  cplx center;
  double radius = 1.0;
};

/// One closed boundary circle, sampled at equispaced angles.
///
/// Points are stored in increasing angle. The line elements carry the
/// orientation of the circle as part of the boundary of the domain: the outer
/// circle counterclockwise, holes clockwise. Summing f * dζ over all components
/// is therefore the trapezoid rule for the oriented boundary integral.
struct BoundaryComponent {
  Circle circle;
  int orientation = 1;
  std::vector<cplx> points;
  std::vector<double> params;  // arclength r * θ_k
  std::vector<cplx> line_elements;
};

/// A closed disk with finitely many disjoint open disks removed, together with
/// its boundary and interior sampling grids. Immutable; copies share storage.
class Domain {
 public:
  static constexpr int kDefaultBoundaryN = 512;

  /// interior_spacing <= 0 selects the default outer.radius / 64.
  static Domain make(Circle outer, std::vector<Circle> holes,
                     int boundary_n = kDefaultBoundaryN, double interior_spacing = 0.0);

  static Domain disk(cplx center = 0.0, double radius = 1.0,
                     int boundary_n = kDefaultBoundaryN, double interior_spacing = 0.0) {
    return make({center, radius}, {}, boundary_n, interior_spacing);
  }

  const Circle& outer() const { return data_->outer; }
  std::span<const Circle> holes() const { return data_->holes; }
  int boundary_n() const { return data_->boundary_n; }
  double interior_spacing() const { return data_->spacing; }
  /// Distance below which a point counts as lying on the boundary.
  double boundary_tol() const { return 1e-6 * data_->outer.radius; }

  std::span<const BoundaryComponent> boundary() const { return data_->components; }
  std::span<const cplx> interior() const { return data_->interior; }
  /// Interior lattice coordinates (i, j) with z = outer.center + spacing * (i + j i).
  std::span<const std::pair<int, int>> lattice() const { return data_->lattice; }

  /// All sample points: boundary components in order, then the interior grid.
  std::span<const cplx> points() const { return data_->all_points; }
  std::size_t boundary_size() const { return data_->all_points.size() - data_->interior.size(); }
  std::size_t size() const { return data_->all_points.size(); }
  /// Offset of component k inside points().
  std::size_t component_offset(std::size_t k) const { return k * data_->boundary_n; }

  /// Positive inside with distance-to-boundary semantics, negative outside.
  double signed_membership(cplx z) const;

  /// Index of an exact grid point, or -1.
  std::ptrdiff_t find_point(cplx z) const;

  bool same_as(const Domain& other) const { return data_ == other.data_; }

 private:
  struct Data {
    Circle outer;
    std::vector<Circle> holes;
    int boundary_n = kDefaultBoundaryN;
    double spacing = 0.0;
    std::vector<BoundaryComponent> components;
    std::vector<cplx> interior;
    std::vector<std::pair<int, int>> lattice;
    std::vector<cplx> all_points;
  };

  explicit Domain(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
};

/// Signed distance to a circle: positive inside.
inline double signed_circle_distance(const Circle& c, cplx z) {
  return c.radius - std::abs(z - c.center);
}

}  // namespace expfact
