#include "fracspace/maximal.hpp"

#include <cmath>
#include <stdexcept>

namespace fracspace {

namespace {

void require_nonnegative(const GridFunction& g) {
  for (const auto& v : g.values())
    if (v.imag() != 0.0 || v.real() < 0.0)
      throw std::invalid_argument("maximal operator requires a nonnegative function");
}

// Mean of g over the closed square, against the covered measure.
bool square_mean(const GridFunction& g, const Vec2& lo, double h, double* mean) {
  const Mesh& mesh = g.mesh();
  double num = 0.0, den = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const Vec2 clo = mesh.lower(c);
    const double ch = mesh.side(c);
    if (clo.x > lo.x + h || clo.x + ch < lo.x || clo.y > lo.y + h || clo.y + ch < lo.y) continue;
    const double w = g.node_weight(c);
    for (int k = 0; k < g.nodes_per_cell(); ++k) {
      const Vec2 y = g.node_point(c, k);
      if (y.x < lo.x || y.x > lo.x + h || y.y < lo.y || y.y > lo.y + h) continue;
      num += g.value(c, k).real() * w;
      den += w;
    }
  }
  if (den == 0.0) return false;
  *mean = num / den;
  return true;
}

}  // namespace

double maximal(const GridFunction& g, int cell, int node) {
  require_nonnegative(g);
  const Mesh& mesh = g.mesh();
  const Vec2 x = g.node_point(cell, node);
  int max_level = 0;
  for (int c = 0; c < mesh.n_cells(); ++c) max_level = std::max(max_level, mesh.cell(c).level);

  static const double kShifts[] = {-0.5, 0.0, 0.5};
  double best = 0.0;
  bool found = false;
  for (int lvl = 0; lvl <= max_level; ++lvl) {
    const double h = mesh.root_scale() * std::exp2(static_cast<double>(-lvl));
    const double bx = mesh.origin().x + h * std::floor((x.x - mesh.origin().x) / h);
    const double by = mesh.origin().y + h * std::floor((x.y - mesh.origin().y) / h);
    for (double sy : kShifts) {
      for (double sx : kShifts) {
        const Vec2 lo = {bx + sx * h, by + sy * h};
        if (x.x < lo.x || x.x > lo.x + h || x.y < lo.y || x.y > lo.y + h) continue;
        double mean = 0.0;
        if (square_mean(g, lo, h, &mean)) {
          best = found ? std::max(best, mean) : mean;
          found = true;
        }
      }
    }
  }
  return best;
}

double mesh_long_distance(const Mesh& mesh, int i, int j) {
  const double li = mesh.side(i), lj = mesh.side(j);
  return li + lj + square_set_distance(mesh.lower(i), li, mesh.lower(j), lj);
}

MaximalLemmaReport check_maximal_lemma(const GridFunction& g, int q_cell, double eta, double r) {
  require_nonnegative(g);
  if (eta <= 0.0 || r <= 0.0) throw std::invalid_argument("eta and r must be positive");
  const Mesh& mesh = g.mesh();

  double inf_mg = std::numeric_limits<double>::infinity();
  for (int k = 0; k < g.nodes_per_cell(); ++k)
    inf_mg = std::min(inf_mg, maximal(g, q_cell, k));

  MaximalLemmaReport rep;
  const int d = 2;
  // Cube sums run over the whole cell family, collar included: dropping the
  // flagged cells would leak mass out of the sums as max_level grows.
  for (int s = 0; s < mesh.n_cells(); ++s) {
    const double D = mesh_long_distance(mesh, q_cell, s);
    double int_s = 0.0;
    const double w = g.node_weight(s);
    for (int k = 0; k < g.nodes_per_cell(); ++k) int_s += g.value(s, k).real() * w;
    if (D > r) rep.nonlocal_lhs += int_s / std::pow(D, d + eta);
    if (D < r) rep.local_lhs += int_s / std::pow(D, d - eta);
    rep.sum_lhs += std::pow(mesh.side(s), d) / std::pow(D, d + eta);
  }
  rep.nonlocal_rhs = inf_mg / std::pow(r, eta);
  rep.local_rhs = inf_mg * std::pow(r, eta);
  rep.sum_rhs = std::pow(mesh.side(q_cell), -eta);

  auto ratio = [](double lhs, double rhs) { return lhs == 0.0 ? 0.0 : lhs / rhs; };
  rep.nonlocal_ratio = ratio(rep.nonlocal_lhs, rep.nonlocal_rhs);
  rep.local_ratio = ratio(rep.local_lhs, rep.local_rhs);
  rep.sum_ratio = ratio(rep.sum_lhs, rep.sum_rhs);
  return rep;
}

}  // namespace fracspace
