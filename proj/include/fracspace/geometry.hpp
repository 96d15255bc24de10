#ifndef FRACSPACE_GEOMETRY_HPP
#define FRACSPACE_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace fracspace {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double t) const { return {x * t, y * t}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const;
  double norm2() const { return x * x + y * y; }
};

double dist(const Vec2& a, const Vec2& b);
double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b);

// Bounded planar domain given by a simple polygon, counterclockwise.
// The domain is the open interior; boundary points are outside.
class Domain {
public:
  // Validates and normalizes orientation. Throws std::invalid_argument on
  // fewer than 3 vertices, repeated consecutive vertices, or
  // self-intersection.
  explicit Domain(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  double area() const { return area_; }
  double diameter() const { return diameter_; }
  Vec2 bbox_min() const { return bbox_min_; }
  Vec2 bbox_max() const { return bbox_max_; }

  // Strict interior test: false on the boundary.
  bool contains(const Vec2& p) const;
  // Euclidean distance to the polygon boundary, same formula inside and out.
  double distance_to_boundary(const Vec2& p) const;
  // Distance from an axis-aligned closed square [lo, lo+side]^2 to the
  // boundary (set distance, not center distance).
  double distance_square_to_boundary(const Vec2& lo, double side) const;
  // True if the closed square does not meet the boundary and its center is
  // interior (resp. exterior).
  bool square_inside(const Vec2& lo, double side) const;
  bool square_outside(const Vec2& lo, double side) const;
  // True if the open square intersects the open region on that side.
  bool square_meets_interior(const Vec2& lo, double side) const;
  bool square_meets_exterior(const Vec2& lo, double side) const;
  bool boundary_crosses_open_square(const Vec2& lo, double side) const;

  // Clips every boundary edge against a closed disk; returns the clipped
  // segment endpoints (possibly empty).
  std::vector<Vec2> boundary_points_in_disk(const Vec2& center, double radius) const;

private:
  bool square_meets_boundary(const Vec2& lo, double side) const;
  std::vector<Vec2> vertices_;
  double area_ = 0.0;
  double diameter_ = 0.0;
  Vec2 bbox_min_, bbox_max_;
};

Domain load_domain(const std::vector<Vec2>& vertices);
Domain make_rectangle(double x0, double y0, double x1, double y1);
Domain make_regular_polygon(int n, double radius, Vec2 center = {0, 0});
// Two unit squares joined by a corridor of the given width and length 0.5.
Domain make_corridor_domain(double width);
Domain make_l_shape();

enum class Side { Interior, Exterior };

// Open dyadic cube on the lattice spawned by a single root square of side
// root_scale. Side length is root_scale * 2^-level; ix, iy index the cube
// within the root at that level.
struct DyadicCube {
  int level = 0;
  std::int64_t ix = 0;
  std::int64_t iy = 0;
};

inline bool operator==(const DyadicCube& a, const DyadicCube& b) {
  return a.level == b.level && a.ix == b.ix && a.iy == b.iy;
}

struct CubeKey {
  std::size_t operator()(const DyadicCube& c) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(c.level));
    mix(static_cast<std::uint64_t>(c.ix));
    mix(static_cast<std::uint64_t>(c.iy));
    return static_cast<std::size_t>(h);
  }
};

struct CoverViolation {
  std::string kind;       // "disjointness", "bracket", "neighbor_ratio",
                          // "superposition", "absorption", "coverage"
  std::string detail;
  int cube_a = -1;
  int cube_b = -1;
};

// Whitney covering of one side of the domain boundary, truncated at
// max_level. Accepted cubes satisfy the distance bracket
//   c_w * l(Q) <= dist(Q, boundary) <= 4 c_w * l(Q)
// and are maximal (no qualifying ancestor). Cells at max_level that touch
// the region but fail the bracket are kept as flagged frontier cells: they
// mark the resolution-limited collar and take part in quadrature, not in
// the Whitney family proper.
class WhitneyCover {
public:
  struct Params {
    Side side = Side::Interior;
    double c_w = 1.0;
    int max_level = 6;
  };

  static WhitneyCover build(const Domain& domain, Side side, double c_w, int max_level);
  // Assemble a cover from explicit cell lists (loading saved covers,
  // injecting faults in tests). No invariants are enforced; validate()
  // reports whatever is violated.
  static WhitneyCover from_cells(const Domain& domain, Side side, double c_w, int max_level,
                                 std::vector<DyadicCube> accepted,
                                 std::vector<DyadicCube> frontier = {});

  const Domain& domain() const { return domain_; }
  Side side() const { return params_.side; }
  double c_w() const { return params_.c_w; }
  int max_level() const { return params_.max_level; }
  double root_scale() const { return root_scale_; }
  Vec2 origin() const { return origin_; }
  // Computation box: the 4x4 block of level-0 lattice cells.
  Vec2 box_lower() const { return {origin_.x - 2 * root_scale_, origin_.y - 2 * root_scale_}; }
  double box_side() const { return 4 * root_scale_; }

  // Accepted Whitney cubes followed by frontier cells;
  // indices < n_accepted() are the Whitney family.
  const std::vector<DyadicCube>& cubes() const { return cubes_; }
  int n_accepted() const { return n_accepted_; }
  int n_cells() const { return static_cast<int>(cubes_.size()); }
  bool is_frontier(int i) const { return i >= n_accepted_; }

  double side_length(int i) const { return side_length(cubes_[i]); }
  double side_length(const DyadicCube& c) const {
    return root_scale_ * std::pow(2.0, -c.level);
  }
  Vec2 lower(const DyadicCube& c) const;
  Vec2 lower(int i) const { return lower(cubes_[i]); }
  Vec2 center(const DyadicCube& c) const;
  Vec2 center(int i) const { return center(cubes_[i]); }

  // Neighbor lists (touching closures), over all cells.
  const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }

  // Cell containing p, or -1. Only cells of this cover are searched.
  int cube_of_point(const Vec2& p) const;
  int find_cube(const DyadicCube& c) const;

  // Exact area bookkeeping: area of the covered region (side of the domain
  // clipped to the computation box), total accepted area, frontier area.
  double region_area() const;
  double accepted_area() const;
  double frontier_area() const;
  // Measure of the region not covered by accepted cubes.
  double uncovered_measure() const { return region_area() - accepted_area(); }

  bool touching(int i, int j) const;
  static bool cubes_touch(const DyadicCube& a, const DyadicCube& b);
  static bool cube_contains(const DyadicCube& outer, const DyadicCube& inner);

  // The superposition cap is a generous desk-scale envelope: until
  // 50 l(Q_min) drops below the domain diameter, the 50Q count of every
  // probe saturates at the family size.
  std::vector<CoverViolation> validate(int superposition_cap = 25000,
                                       int coverage_samples = 10000,
                                       unsigned seed = 1u) const;

  // Max number of cubes whose 50-fold dilation covers a common point,
  // probed at all cell centers.
  int superposition_50q() const;

private:
  Domain domain_{std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}}};
  Params params_;
  double root_scale_ = 1.0;
  Vec2 origin_;
  std::vector<DyadicCube> cubes_;
  int n_accepted_ = 0;
  std::vector<std::vector<int>> adjacency_;
  std::unordered_map<DyadicCube, int, CubeKey> index_;
  std::vector<int> levels_present_;

  void build_adjacency();
  bool in_region(const Vec2& p) const;
};

// Long distance D(Q,S) = l(Q) + dist(Q,S) + l(S) with Euclidean set
// distance between the closed squares.
double long_distance(const WhitneyCover& cover, int i, int j);
double square_set_distance(const Vec2& lo_a, double side_a, const Vec2& lo_b, double side_b);

}  // namespace fracspace

#endif
