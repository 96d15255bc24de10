#include "fracspace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fracspace {

double Vec2::norm() const { return std::hypot(x, y); }

double dist(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.norm2();
  if (len2 == 0.0) return dist(p, a);
  double t = (p - a).dot(ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, a + ab * t);
}

namespace {

int orientation(const Vec2& p, const Vec2& q, const Vec2& r) {
  const double v = (q - p).cross(r - p);
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  return orientation(a, b, p) == 0 && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
         p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

double dist_segment_segment(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  if (segments_intersect(a, b, c, d)) return 0.0;
  return std::min(std::min(dist_point_segment(a, c, d), dist_point_segment(b, c, d)),
                  std::min(dist_point_segment(c, a, b), dist_point_segment(d, a, b)));
}

bool point_in_closed_square(const Vec2& p, const Vec2& lo, double side) {
  return p.x >= lo.x && p.x <= lo.x + side && p.y >= lo.y && p.y <= lo.y + side;
}

// Distance from a segment to a closed axis-aligned square.
double dist_segment_square(const Vec2& a, const Vec2& b, const Vec2& lo, double side) {
  if (point_in_closed_square(a, lo, side) || point_in_closed_square(b, lo, side)) return 0.0;
  const Vec2 c00 = lo, c10 = {lo.x + side, lo.y}, c01 = {lo.x, lo.y + side},
             c11 = {lo.x + side, lo.y + side};
  double d = dist_segment_segment(a, b, c00, c10);
  d = std::min(d, dist_segment_segment(a, b, c10, c11));
  d = std::min(d, dist_segment_segment(a, b, c11, c01));
  d = std::min(d, dist_segment_segment(a, b, c01, c00));
  return d;
}

}  // namespace

Domain::Domain(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % n];
    if (a.x == b.x && a.y == b.y)
      throw std::invalid_argument("repeated consecutive polygon vertices");
  }
  // Non-adjacent edge pairs must not intersect.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(vertices_[i], vertices_[(i + 1) % n], vertices_[j],
                             vertices_[(j + 1) % n]))
        throw std::invalid_argument("self-intersecting polygon");
    }
  }
  double signed_area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % n];
    signed_area += a.cross(b);
  }
  signed_area *= 0.5;
  if (signed_area == 0.0) throw std::invalid_argument("polygon has zero area");
  if (signed_area < 0.0) {
    std::reverse(vertices_.begin(), vertices_.end());
    signed_area = -signed_area;
  }
  area_ = signed_area;

  bbox_min_ = bbox_max_ = vertices_[0];
  for (const Vec2& v : vertices_) {
    bbox_min_.x = std::min(bbox_min_.x, v.x);
    bbox_min_.y = std::min(bbox_min_.y, v.y);
    bbox_max_.x = std::max(bbox_max_.x, v.x);
    bbox_max_.y = std::max(bbox_max_.y, v.y);
  }
  diameter_ = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      diameter_ = std::max(diameter_, dist(vertices_[i], vertices_[j]));
}

bool Domain::contains(const Vec2& p) const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i)
    if (on_segment(p, vertices_[i], vertices_[(i + 1) % n])) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
      inside = !inside;
  }
  return inside;
}

double Domain::distance_to_boundary(const Vec2& p) const {
  const std::size_t n = vertices_.size();
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    d = std::min(d, dist_point_segment(p, vertices_[i], vertices_[(i + 1) % n]));
  return d;
}

double Domain::distance_square_to_boundary(const Vec2& lo, double side) const {
  const std::size_t n = vertices_.size();
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    d = std::min(d, dist_segment_square(vertices_[i], vertices_[(i + 1) % n], lo, side));
  return d;
}

bool Domain::square_meets_boundary(const Vec2& lo, double side) const {
  return distance_square_to_boundary(lo, side) == 0.0;
}

// True when some boundary edge passes through the open square; edges lying
// along the square's own border do not count.
bool Domain::boundary_crosses_open_square(const Vec2& lo, double side) const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[(i + 1) % n];
    const Vec2 d = b - a;
    // Liang-Barsky clip of [a,b] against the closed square.
    double t0 = 0.0, t1 = 1.0;
    bool ok = true;
    auto clip = [&](double denom, double num) {
      // Constraint t * denom >= num on [t0, t1].
      if (denom == 0.0) {
        if (num > 0.0) ok = false;
        return;
      }
      const double t = num / denom;
      if (denom > 0.0)
        t0 = std::max(t0, t);
      else
        t1 = std::min(t1, t);
    };
    clip(d.x, lo.x - a.x);
    clip(-d.x, a.x - (lo.x + side));
    clip(d.y, lo.y - a.y);
    clip(-d.y, a.y - (lo.y + side));
    if (!ok || t1 <= t0) continue;
    const Vec2 mid = a + d * ((t0 + t1) / 2);
    if (mid.x > lo.x && mid.x < lo.x + side && mid.y > lo.y && mid.y < lo.y + side) return true;
  }
  return false;
}

bool Domain::square_inside(const Vec2& lo, double side) const {
  if (square_meets_boundary(lo, side)) return false;
  return contains({lo.x + side / 2, lo.y + side / 2});
}

bool Domain::square_outside(const Vec2& lo, double side) const {
  if (square_meets_boundary(lo, side)) return false;
  return !contains({lo.x + side / 2, lo.y + side / 2});
}

bool Domain::square_meets_interior(const Vec2& lo, double side) const {
  return contains({lo.x + side / 2, lo.y + side / 2}) || boundary_crosses_open_square(lo, side);
}

bool Domain::square_meets_exterior(const Vec2& lo, double side) const {
  return !contains({lo.x + side / 2, lo.y + side / 2}) || boundary_crosses_open_square(lo, side);
}

std::vector<Vec2> Domain::boundary_points_in_disk(const Vec2& center, double radius) const {
  std::vector<Vec2> pts;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[(i + 1) % n];
    const Vec2 d = b - a;
    const Vec2 f = a - center;
    const double qa = d.norm2();
    const double qb = 2.0 * f.dot(d);
    const double qc = f.norm2() - radius * radius;
    if (qa == 0.0) continue;
    const double disc = qb * qb - 4 * qa * qc;
    if (disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    double t0 = (-qb - sq) / (2 * qa);
    double t1 = (-qb + sq) / (2 * qa);
    t0 = std::clamp(t0, 0.0, 1.0);
    t1 = std::clamp(t1, 0.0, 1.0);
    if (t1 <= t0) {
      // Segment may still start inside the disk with both roots clamped away.
      if (qc <= 0.0) pts.push_back(a);
      continue;
    }
    pts.push_back(a + d * t0);
    pts.push_back(a + d * t1);
  }
  return pts;
}

Domain load_domain(const std::vector<Vec2>& vertices) { return Domain(vertices); }

Domain make_rectangle(double x0, double y0, double x1, double y1) {
  return Domain({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

Domain make_regular_polygon(int n, double radius, Vec2 center) {
  std::vector<Vec2> v;
  v.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * M_PI * k / n;
    v.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
  }
  return Domain(std::move(v));
}

Domain make_corridor_domain(double width) {
  // Two unit squares with a horizontal corridor of length 0.5 between them,
  // centered vertically.
  const double y0 = 0.5 - width / 2;
  const double y1 = 0.5 + width / 2;
  return Domain({{0, 0},
                 {1, 0},
                 {1, y0},
                 {1.5, y0},
                 {1.5, 0},
                 {2.5, 0},
                 {2.5, 1},
                 {1.5, 1},
                 {1.5, y1},
                 {1, y1},
                 {1, 1},
                 {0, 1}});
}

Domain make_l_shape() {
  return Domain({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

// ---------------------------------------------------------------------------
// Whitney cover
// ---------------------------------------------------------------------------

Vec2 WhitneyCover::lower(const DyadicCube& c) const {
  const double h = side_length(c);
  return {origin_.x + h * static_cast<double>(c.ix), origin_.y + h * static_cast<double>(c.iy)};
}

Vec2 WhitneyCover::center(const DyadicCube& c) const {
  const double h = side_length(c);
  const Vec2 lo = lower(c);
  return {lo.x + h / 2, lo.y + h / 2};
}

bool WhitneyCover::in_region(const Vec2& p) const {
  return params_.side == Side::Interior ? domain_.contains(p) : !domain_.contains(p);
}

WhitneyCover WhitneyCover::build(const Domain& domain, Side side, double c_w, int max_level) {
  if (c_w <= 0.0) throw std::invalid_argument("c_w must be positive");
  if (max_level < 0) throw std::invalid_argument("max_level must be nonnegative");

  WhitneyCover cover;
  cover.domain_ = domain;
  cover.params_ = {side, c_w, max_level};

  // One dyadic lattice for both sides, at the scale of the domain: level-0
  // cells have the smallest power-of-two side at least the bounding-box
  // diameter, anchored at the box center. The computation box truncating
  // the exterior is the symmetric 4x4 block of level-0 cells; it contains
  // the bounding box dilated by a factor 4.
  const Vec2 bmin = domain.bbox_min();
  const Vec2 bmax = domain.bbox_max();
  const double diam_bbox = std::hypot(bmax.x - bmin.x, bmax.y - bmin.y);
  cover.root_scale_ = std::exp2(std::ceil(std::log2(diam_bbox)));
  cover.origin_ = {(bmin.x + bmax.x) / 2, (bmin.y + bmax.y) / 2};

  std::vector<DyadicCube> accepted;
  std::vector<DyadicCube> frontier;

  // A cube enters the cover iff it lies in the region, satisfies the
  // distance bracket, and no ancestor qualifies; cells at max_level that
  // meet the region without qualifying form the frontier collar.
  auto visit = [&](auto&& self, const DyadicCube& cube) -> void {
    const Vec2 lo = cover.lower(cube);
    const double h = cover.side_length(cube);
    const bool meets = side == Side::Interior ? domain.square_meets_interior(lo, h)
                                              : domain.square_meets_exterior(lo, h);
    if (!meets) return;
    const bool inside =
        side == Side::Interior ? domain.square_inside(lo, h) : domain.square_outside(lo, h);
    if (inside) {
      const double d = domain.distance_square_to_boundary(lo, h);
      if (d >= c_w * h && d <= 4.0 * c_w * h) {
        accepted.push_back(cube);
        return;
      }
    }
    if (cube.level == max_level) {
      frontier.push_back(cube);
      return;
    }
    for (int dy = 0; dy < 2; ++dy)
      for (int dx = 0; dx < 2; ++dx)
        self(self, DyadicCube{cube.level + 1, 2 * cube.ix + dx, 2 * cube.iy + dy});
  };
  for (std::int64_t iy = -2; iy <= 1; ++iy)
    for (std::int64_t ix = -2; ix <= 1; ++ix) visit(visit, DyadicCube{0, ix, iy});

  if (accepted.empty())
    throw std::runtime_error("no qualifying Whitney cube at any level <= max_level");

  cover.n_accepted_ = static_cast<int>(accepted.size());
  cover.cubes_ = std::move(accepted);
  cover.cubes_.insert(cover.cubes_.end(), frontier.begin(), frontier.end());

  for (int i = 0; i < cover.n_cells(); ++i) cover.index_.emplace(cover.cubes_[i], i);
  {
    std::vector<char> seen(max_level + 1, 0);
    for (const DyadicCube& q : cover.cubes_) seen[q.level] = 1;
    for (int l = 0; l <= max_level; ++l)
      if (seen[l]) cover.levels_present_.push_back(l);
  }
  cover.build_adjacency();
  return cover;
}

WhitneyCover WhitneyCover::from_cells(const Domain& domain, Side side, double c_w, int max_level,
                                      std::vector<DyadicCube> accepted,
                                      std::vector<DyadicCube> frontier) {
  WhitneyCover cover;
  cover.domain_ = domain;
  cover.params_ = {side, c_w, max_level};
  const Vec2 bmin = domain.bbox_min();
  const Vec2 bmax = domain.bbox_max();
  const double diam_bbox = std::hypot(bmax.x - bmin.x, bmax.y - bmin.y);
  cover.root_scale_ = std::exp2(std::ceil(std::log2(diam_bbox)));
  cover.origin_ = {(bmin.x + bmax.x) / 2, (bmin.y + bmax.y) / 2};
  cover.n_accepted_ = static_cast<int>(accepted.size());
  cover.cubes_ = std::move(accepted);
  cover.cubes_.insert(cover.cubes_.end(), frontier.begin(), frontier.end());
  for (int i = 0; i < cover.n_cells(); ++i) cover.index_.emplace(cover.cubes_[i], i);
  int deepest = 0;
  for (const DyadicCube& q : cover.cubes_) deepest = std::max(deepest, q.level);
  std::vector<char> seen(deepest + 1, 0);
  for (const DyadicCube& q : cover.cubes_) seen[q.level] = 1;
  for (int l = 0; l <= deepest; ++l)
    if (seen[l]) cover.levels_present_.push_back(l);
  cover.build_adjacency();
  return cover;
}

bool WhitneyCover::cubes_touch(const DyadicCube& a, const DyadicCube& b) {
  const int m = std::max(a.level, b.level);
  const std::int64_t alo_x = a.ix << (m - a.level), ahi_x = (a.ix + 1) << (m - a.level);
  const std::int64_t alo_y = a.iy << (m - a.level), ahi_y = (a.iy + 1) << (m - a.level);
  const std::int64_t blo_x = b.ix << (m - b.level), bhi_x = (b.ix + 1) << (m - b.level);
  const std::int64_t blo_y = b.iy << (m - b.level), bhi_y = (b.iy + 1) << (m - b.level);
  return alo_x <= bhi_x && blo_x <= ahi_x && alo_y <= bhi_y && blo_y <= ahi_y;
}

bool WhitneyCover::cube_contains(const DyadicCube& outer, const DyadicCube& inner) {
  if (outer.level > inner.level) return false;
  const int d = inner.level - outer.level;
  return (inner.ix >> d) == outer.ix && (inner.iy >> d) == outer.iy;
}

void WhitneyCover::build_adjacency() {
  adjacency_.assign(cubes_.size(), {});
  for (int i = 0; i < n_cells(); ++i) {
    const DyadicCube& q = cubes_[i];
    for (int lvl : levels_present_) {
      // Index range of level-lvl cells touching q, in common fine units.
      const int m = std::max(lvl, q.level);
      const std::int64_t u = std::int64_t{1} << (m - lvl);
      const std::int64_t lo_x = q.ix << (m - q.level), hi_x = (q.ix + 1) << (m - q.level);
      const std::int64_t lo_y = q.iy << (m - q.level), hi_y = (q.iy + 1) << (m - q.level);
      const std::int64_t jx0 = (lo_x - u) / u - 1, jx1 = hi_x / u + 1;
      const std::int64_t jy0 = (lo_y - u) / u - 1, jy1 = hi_y / u + 1;
      for (std::int64_t jy = jy0; jy <= jy1; ++jy) {
        for (std::int64_t jx = jx0; jx <= jx1; ++jx) {
          const DyadicCube cand{lvl, jx, jy};
          auto it = index_.find(cand);
          if (it == index_.end() || it->second == i) continue;
          if (cubes_touch(q, cand)) adjacency_[i].push_back(it->second);
        }
      }
    }
    std::sort(adjacency_[i].begin(), adjacency_[i].end());
    adjacency_[i].erase(std::unique(adjacency_[i].begin(), adjacency_[i].end()),
                        adjacency_[i].end());
  }
}

int WhitneyCover::cube_of_point(const Vec2& p) const {
  for (int lvl : levels_present_) {
    const double h = root_scale_ * std::exp2(static_cast<double>(-lvl));
    const auto jx = static_cast<std::int64_t>(std::floor((p.x - origin_.x) / h));
    const auto jy = static_cast<std::int64_t>(std::floor((p.y - origin_.y) / h));
    auto it = index_.find(DyadicCube{lvl, jx, jy});
    if (it != index_.end()) return it->second;
  }
  return -1;
}

int WhitneyCover::find_cube(const DyadicCube& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : it->second;
}

double WhitneyCover::region_area() const {
  return params_.side == Side::Interior
             ? domain_.area()
             : box_side() * box_side() - domain_.area();
}

double WhitneyCover::accepted_area() const {
  double a = 0.0;
  for (int i = 0; i < n_accepted_; ++i) {
    const double h = side_length(i);
    a += h * h;
  }
  return a;
}

double WhitneyCover::frontier_area() const {
  double a = 0.0;
  for (int i = n_accepted_; i < n_cells(); ++i) {
    const double h = side_length(i);
    a += h * h;
  }
  return a;
}

bool WhitneyCover::touching(int i, int j) const { return cubes_touch(cubes_[i], cubes_[j]); }

int WhitneyCover::superposition_50q() const {
  int worst = 0;
  for (int p = 0; p < n_accepted_; ++p) {
    const Vec2 probe = center(p);
    int count = 0;
    for (int i = 0; i < n_accepted_; ++i) {
      const double r = 25.0 * side_length(i);
      const Vec2 c = center(i);
      if (std::abs(probe.x - c.x) <= r && std::abs(probe.y - c.y) <= r) ++count;
    }
    worst = std::max(worst, count);
  }
  return worst;
}

std::vector<CoverViolation> WhitneyCover::validate(int superposition_cap, int coverage_samples,
                                                   unsigned seed) const {
  std::vector<CoverViolation> out;
  const double tol = 1e-9 * root_scale_;

  // Disjointness: distinct dyadic cells overlap iff one contains the other.
  for (int i = 0; i < n_cells(); ++i) {
    DyadicCube a = cubes_[i];
    while (a.level > 0) {
      a = DyadicCube{a.level - 1, a.ix >> 1, a.iy >> 1};
      const int j = find_cube(a);
      if (j >= 0)
        out.push_back({"disjointness", "cell contained in another cell", i, j});
    }
  }

  // Distance bracket, accepted cubes only (frontier cells fail by design).
  for (int i = 0; i < n_accepted_; ++i) {
    const double h = side_length(i);
    const double d = domain_.distance_square_to_boundary(lower(i), h);
    if (d < params_.c_w * h - tol || d > 4.0 * params_.c_w * h + tol)
      out.push_back({"bracket", "distance bracket violated", i, -1});
  }

  // Neighbor size ratio over all cells: touching cells may differ by at
  // most one level.
  for (int i = 0; i < n_cells(); ++i)
    for (int j : adjacency_[i])
      if (j > i && std::abs(cubes_[i].level - cubes_[j].level) > 1)
        out.push_back({"neighbor_ratio", "touching cells differ by more than factor 2", i, j});

  // 50Q superposition.
  const int sup = superposition_50q();
  if (sup > superposition_cap)
    out.push_back({"superposition", "50Q overlap count " + std::to_string(sup) +
                                        " exceeds cap " + std::to_string(superposition_cap),
                   -1, -1});

  // Absorption: S inside 5Q forces l(S) >= l(Q)/2, i.e. at most one level
  // deeper.
  for (int qi = 0; qi < n_cells(); ++qi) {
    const double hq = side_length(qi);
    const Vec2 cq = center(qi);
    for (int si = 0; si < n_cells(); ++si) {
      if (cubes_[si].level < cubes_[qi].level + 2) continue;
      const double hs = side_length(si);
      const Vec2 lo = lower(si);
      if (lo.x >= cq.x - 2.5 * hq && lo.x + hs <= cq.x + 2.5 * hq && lo.y >= cq.y - 2.5 * hq &&
          lo.y + hs <= cq.y + 2.5 * hq)
        out.push_back({"absorption", "small cell inside 5Q of much larger cube", qi, si});
    }
  }

  // Coverage: sampled region points outside the frontier collar must land
  // in exactly one accepted cube.
  std::mt19937 rng(seed);
  const Vec2 blo = box_lower();
  std::uniform_real_distribution<double> ux(blo.x, blo.x + box_side());
  std::uniform_real_distribution<double> uy(blo.y, blo.y + box_side());
  const Vec2 bmin = domain_.bbox_min(), bmax = domain_.bbox_max();
  int tested = 0, guard = 0;
  while (tested < coverage_samples && guard < 200 * coverage_samples) {
    ++guard;
    Vec2 p;
    if (params_.side == Side::Interior) {
      std::uniform_real_distribution<double> vx(bmin.x, bmax.x), vy(bmin.y, bmax.y);
      p = {vx(rng), vy(rng)};
    } else {
      p = {ux(rng), uy(rng)};
    }
    if (!in_region(p)) continue;
    const int ci = cube_of_point(p);
    if (ci >= 0 && is_frontier(ci)) continue;  // collar excluded
    ++tested;
    if (ci < 0) {
      out.push_back({"coverage", "region point covered by no cell", -1, -1});
      if (out.size() > 50) break;
    }
  }

  return out;
}

double square_set_distance(const Vec2& lo_a, double side_a, const Vec2& lo_b, double side_b) {
  const double gx =
      std::max({lo_b.x - (lo_a.x + side_a), lo_a.x - (lo_b.x + side_b), 0.0});
  const double gy =
      std::max({lo_b.y - (lo_a.y + side_a), lo_a.y - (lo_b.y + side_b), 0.0});
  return std::hypot(gx, gy);
}

double long_distance(const WhitneyCover& cover, int i, int j) {
  const double li = cover.side_length(i), lj = cover.side_length(j);
  return li + lj + square_set_distance(cover.lower(i), li, cover.lower(j), lj);
}

}  // namespace fracspace
