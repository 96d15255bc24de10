#ifndef FRACSPACE_GRIDFN_HPP
#define FRACSPACE_GRIDFN_HPP

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fracspace/geometry.hpp"

namespace fracspace {

// Quadrature mesh: dyadic cells on one lattice, either a single Whitney
// cover or the interior and exterior covers merged over the computation
// box. Self-contained (owns a copy of the domain and cell data).
class Mesh {
public:
  static std::shared_ptr<const Mesh> from_cover(const WhitneyCover& cover);
  // Interior cells first (indices preserved), then exterior cells not
  // already present.
  static std::shared_ptr<const Mesh> merged(const WhitneyCover& interior,
                                            const WhitneyCover& exterior);

  const Domain& domain() const { return domain_; }
  double root_scale() const { return root_scale_; }
  Vec2 origin() const { return origin_; }
  bool is_box() const { return is_box_; }
  int n_interior_cells() const { return n_interior_; }
  Vec2 box_lower() const { return {origin_.x - 2 * root_scale_, origin_.y - 2 * root_scale_}; }
  double box_side() const { return 4 * root_scale_; }

  int n_cells() const { return static_cast<int>(cells_.size()); }
  const DyadicCube& cell(int i) const { return cells_[i]; }
  bool frontier(int i) const { return frontier_[i]; }
  double side(int i) const { return root_scale_ * std::exp2(static_cast<double>(-cells_[i].level)); }
  Vec2 lower(int i) const;
  Vec2 center(int i) const;
  bool touching(int i, int j) const { return WhitneyCover::cubes_touch(cells_[i], cells_[j]); }
  int cell_of_point(const Vec2& p) const;
  double cell_set_distance(int i, const Vec2& p) const;
  // Distance from p to the boundary of the computation box.
  double box_margin(const Vec2& p) const;

private:
  Domain domain_{std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}}};
  double root_scale_ = 1.0;
  Vec2 origin_;
  bool is_box_ = false;
  int n_interior_ = 0;
  std::vector<DyadicCube> cells_;
  std::vector<char> frontier_;
  std::vector<int> levels_present_;
  std::unordered_map<DyadicCube, int, CubeKey> index_;

  void finish();
};

// Per-cell sample arrays: m x m values at the tensor midpoints of each
// cell. Node (a, b) of cell i sits at lower(i) + ((a+1/2)/m, (b+1/2)/m) h.
class GridFunction {
public:
  GridFunction(std::shared_ptr<const Mesh> mesh, int m, bool is_real = true);

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  int nodes_per_side() const { return m_; }
  int nodes_per_cell() const { return m_ * m_; }
  int n_nodes() const { return static_cast<int>(values_.size()); }
  bool is_real() const { return is_real_; }
  void set_is_real(bool r) { is_real_ = r; }

  std::complex<double> value(int cell, int node) const { return values_[cell * m_ * m_ + node]; }
  void set_value(int cell, int node, std::complex<double> v) { values_[cell * m_ * m_ + node] = v; }
  const std::vector<std::complex<double>>& values() const { return values_; }
  std::vector<std::complex<double>>& values() { return values_; }

  Vec2 node_point(int cell, int node) const;
  double node_weight(int cell) const {
    const double h = mesh_->side(cell) / m_;
    return h * h;
  }
  // Mean of the cell's node values (midpoint rule).
  std::complex<double> cell_mean(int cell) const;
  // Node of the given cell nearest to p (ties to the lowest node index).
  int nearest_node(int cell, const Vec2& p) const;
  double max_abs() const;

private:
  std::shared_ptr<const Mesh> mesh_;
  int m_;
  bool is_real_;
  std::vector<std::complex<double>> values_;
};

// Samples a callable at every node; throws on non-finite values.
GridFunction sample_function(std::shared_ptr<const Mesh> mesh,
                             const std::function<double(Vec2)>& fn, int m);

// Named builtins: "const", "x1", "bump" (radial cubic plateau bump centered
// at (1/2,1/2) with radius 1/2), "holder:a" = |x-(1/2,1/2)|^a, "disk"
// (indicator of the unit disk at the origin).
std::function<double(Vec2)> builtin_function(const std::string& name);

// Cubic spline profile: 1 at t=0 falling to 0 at t=1, C1 at both ends.
double cubic_bump_profile(double t);

}  // namespace fracspace

#endif
