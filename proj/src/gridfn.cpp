#include "fracspace/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracspace {

void Mesh::finish() {
  for (int i = 0; i < n_cells(); ++i) index_.emplace(cells_[i], i);
  int max_level = 0;
  for (const DyadicCube& c : cells_) max_level = std::max(max_level, c.level);
  std::vector<char> seen(max_level + 1, 0);
  for (const DyadicCube& c : cells_) seen[c.level] = 1;
  for (int l = 0; l <= max_level; ++l)
    if (seen[l]) levels_present_.push_back(l);
}

std::shared_ptr<const Mesh> Mesh::from_cover(const WhitneyCover& cover) {
  auto mesh = std::make_shared<Mesh>();
  mesh->domain_ = cover.domain();
  mesh->root_scale_ = cover.root_scale();
  mesh->origin_ = cover.origin();
  mesh->is_box_ = false;
  mesh->cells_ = cover.cubes();
  mesh->frontier_.assign(cover.n_cells(), 0);
  for (int i = cover.n_accepted(); i < cover.n_cells(); ++i) mesh->frontier_[i] = 1;
  mesh->n_interior_ = cover.side() == Side::Interior ? cover.n_cells() : 0;
  mesh->finish();
  return mesh;
}

std::shared_ptr<const Mesh> Mesh::merged(const WhitneyCover& interior,
                                         const WhitneyCover& exterior) {
  if (interior.root_scale() != exterior.root_scale())
    throw std::invalid_argument("covers must share one dyadic lattice");
  auto mesh = std::make_shared<Mesh>();
  mesh->domain_ = interior.domain();
  mesh->root_scale_ = interior.root_scale();
  mesh->origin_ = interior.origin();
  mesh->is_box_ = true;
  mesh->cells_ = interior.cubes();
  mesh->frontier_.assign(interior.n_cells(), 0);
  for (int i = interior.n_accepted(); i < interior.n_cells(); ++i) mesh->frontier_[i] = 1;
  mesh->n_interior_ = interior.n_cells();

  std::unordered_map<DyadicCube, int, CubeKey> present;
  for (int i = 0; i < interior.n_cells(); ++i) present.emplace(interior.cubes()[i], i);
  for (int i = 0; i < exterior.n_cells(); ++i) {
    const DyadicCube& c = exterior.cubes()[i];
    if (present.count(c)) continue;  // boundary-crossing cells flagged by both sides
    mesh->cells_.push_back(c);
    mesh->frontier_.push_back(exterior.is_frontier(i) ? 1 : 0);
  }
  mesh->finish();
  return mesh;
}

Vec2 Mesh::lower(int i) const {
  const double h = side(i);
  return {origin_.x + h * static_cast<double>(cells_[i].ix),
          origin_.y + h * static_cast<double>(cells_[i].iy)};
}

Vec2 Mesh::center(int i) const {
  const double h = side(i);
  const Vec2 lo = lower(i);
  return {lo.x + h / 2, lo.y + h / 2};
}

int Mesh::cell_of_point(const Vec2& p) const {
  for (int lvl : levels_present_) {
    const double h = root_scale_ * std::exp2(static_cast<double>(-lvl));
    const auto jx = static_cast<std::int64_t>(std::floor((p.x - origin_.x) / h));
    const auto jy = static_cast<std::int64_t>(std::floor((p.y - origin_.y) / h));
    auto it = index_.find(DyadicCube{lvl, jx, jy});
    if (it != index_.end()) return it->second;
  }
  return -1;
}

double Mesh::cell_set_distance(int i, const Vec2& p) const {
  const Vec2 lo = lower(i);
  const double h = side(i);
  const double gx = std::max({lo.x - p.x, p.x - (lo.x + h), 0.0});
  const double gy = std::max({lo.y - p.y, p.y - (lo.y + h), 0.0});
  return std::hypot(gx, gy);
}

double Mesh::box_margin(const Vec2& p) const {
  const double lo_x = origin_.x - 2 * root_scale_, hi_x = origin_.x + 2 * root_scale_;
  const double lo_y = origin_.y - 2 * root_scale_, hi_y = origin_.y + 2 * root_scale_;
  const double mx = std::min(p.x - lo_x, hi_x - p.x);
  const double my = std::min(p.y - lo_y, hi_y - p.y);
  return std::max(std::min(mx, my), 0.0);
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(std::shared_ptr<const Mesh> mesh, int m, bool is_real)
    : mesh_(std::move(mesh)), m_(m), is_real_(is_real) {
  if (m_ < 1) throw std::invalid_argument("nodes per side must be at least 1");
  values_.assign(static_cast<std::size_t>(mesh_->n_cells()) * m_ * m_, {0.0, 0.0});
}

Vec2 GridFunction::node_point(int cell, int node) const {
  const int a = node % m_;
  const int b = node / m_;
  const double h = mesh_->side(cell);
  const Vec2 lo = mesh_->lower(cell);
  return {lo.x + h * (a + 0.5) / m_, lo.y + h * (b + 0.5) / m_};
}

std::complex<double> GridFunction::cell_mean(int cell) const {
  std::complex<double> s{0.0, 0.0};
  const int nn = m_ * m_;
  for (int k = 0; k < nn; ++k) s += values_[cell * nn + k];
  return s / static_cast<double>(nn);
}

int GridFunction::nearest_node(int cell, const Vec2& p) const {
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (int k = 0; k < m_ * m_; ++k) {
    const double d = dist(node_point(cell, k), p);
    if (d < bd) {
      bd = d;
      best = k;
    }
  }
  return best;
}

double GridFunction::max_abs() const {
  double v = 0.0;
  for (const auto& z : values_) v = std::max(v, std::abs(z));
  return v;
}

GridFunction sample_function(std::shared_ptr<const Mesh> mesh,
                             const std::function<double(Vec2)>& fn, int m) {
  GridFunction g(std::move(mesh), m, true);
  for (int c = 0; c < g.mesh().n_cells(); ++c) {
    for (int k = 0; k < g.nodes_per_cell(); ++k) {
      const double v = fn(g.node_point(c, k));
      if (!std::isfinite(v)) throw std::runtime_error("non-finite sample value at a node");
      g.set_value(c, k, {v, 0.0});
    }
  }
  return g;
}

double cubic_bump_profile(double t) {
  if (t >= 1.0) return 0.0;
  if (t <= 0.0) return 1.0;
  return 1.0 - 3.0 * t * t + 2.0 * t * t * t;
}

std::function<double(Vec2)> builtin_function(const std::string& name) {
  if (name == "const") return [](Vec2) { return 1.0; };
  if (name == "x1") return [](Vec2 p) { return p.x; };
  if (name == "bump")
    return [](Vec2 p) { return cubic_bump_profile(2.0 * dist(p, {0.5, 0.5})); };
  if (name == "disk") return [](Vec2 p) { return p.norm() < 1.0 ? 1.0 : 0.0; };
  if (name.rfind("holder:", 0) == 0) {
    const double a = std::stod(name.substr(7));
    return [a](Vec2 p) { return std::pow(dist(p, {0.5, 0.5}), a); };
  }
  throw std::invalid_argument("unknown builtin function: " + name);
}

}  // namespace fracspace
