#include "fracspace/extension.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fracspace {

namespace {

// One-axis profile: cubic rise over the support margin, plateau across the
// cell.
double axis_profile(double t, double lo, double len, double margin) {
  if (t <= lo - margin || t >= lo + len + margin) return 0.0;
  if (t >= lo && t <= lo + len) return 1.0;
  const double u = t < lo ? (t - (lo - margin)) / margin : ((lo + len + margin) - t) / margin;
  return u * u * (3.0 - 2.0 * u);
}

}  // namespace

ExteriorStructure build_exterior_structure(const WhitneyCover& interior,
                                           const WhitneyCover& exterior,
                                           double size_cap_factor) {
  if (interior.root_scale() != exterior.root_scale() ||
      interior.origin().x != exterior.origin().x || interior.origin().y != exterior.origin().y)
    throw std::invalid_argument("interior and exterior covers must share one dyadic lattice");
  if (size_cap_factor <= 0.0) throw std::invalid_argument("size_cap_factor must be positive");

  ExteriorStructure s;
  s.interior_mesh = Mesh::from_cover(interior);
  s.box_mesh = Mesh::merged(interior, exterior);
  s.exterior_cells = exterior.cubes();
  s.exterior_adjacency = exterior.adjacency();

  double max_interior_side = 0.0;
  for (int i = 0; i < interior.n_accepted(); ++i)
    max_interior_side = std::max(max_interior_side, interior.side_length(i));
  s.size_cap = size_cap_factor * max_interior_side;

  const int n_ext = exterior.n_cells();
  s.partner.assign(n_ext, -1);
  s.in_w3.assign(n_ext, 0);
  s.in_w4.assign(n_ext, 0);

  // Group interior cells by level for the same-size search.
  std::vector<std::vector<int>> by_level;
  for (int i = 0; i < interior.n_cells(); ++i) {
    const int lvl = interior.cubes()[i].level;
    if (lvl >= static_cast<int>(by_level.size())) by_level.resize(lvl + 1);
    by_level[lvl].push_back(i);
  }

  std::vector<int> overlap(interior.n_cells(), 0);
  for (int e = 0; e < n_ext; ++e) {
    const DyadicCube& q = s.exterior_cells[e];
    const double lq = exterior.side_length(e);
    const Vec2 lo_q = exterior.lower(e);
    int best = -1;
    double best_d = 8.0 * lq;
    if (q.level < static_cast<int>(by_level.size())) {
      for (int i : by_level[q.level]) {
        const double d = 2.0 * lq + square_set_distance(lo_q, lq, interior.lower(i), lq);
        if (d < best_d || (d == best_d && best >= 0 && i < best)) {
          best = i;
          best_d = d;
        }
      }
    }
    s.partner[e] = best;
    if (best >= 0 && lq <= s.size_cap * (1.0 + 1e-12)) {
      s.in_w3[e] = 1;
      ++overlap[best];
      s.partner_distance_constant = std::max(s.partner_distance_constant, best_d / lq);
    } else if (best < 0 && lq <= s.size_cap * (1.0 + 1e-12)) {
      throw std::runtime_error(
          "exterior cell (level " + std::to_string(q.level) + ", " + std::to_string(q.ix) + "," +
          std::to_string(q.iy) + ") near the boundary has no same-size interior partner; "
          "the interior cover is too shallow");
    }
  }

  for (int e = 0; e < n_ext; ++e) {
    if (!s.in_w3[e]) continue;
    bool all = true;
    for (int nb : s.exterior_adjacency[e])
      if (!s.in_w3[nb]) {
        all = false;
        break;
      }
    s.in_w4[e] = all ? 1 : 0;
  }
  for (int e = 0; e < n_ext; ++e) {
    s.n_w3 += s.in_w3[e];
    s.n_w4 += s.in_w4[e];
  }
  s.max_partner_overlap = *std::max_element(overlap.begin(), overlap.end());
  return s;
}

double bump_raw(const ExteriorStructure& s, int ext_cell, const Vec2& x) {
  const DyadicCube& c = s.exterior_cells[ext_cell];
  const double h = s.box_mesh->root_scale() * std::exp2(static_cast<double>(-c.level));
  const Vec2 lo = {s.box_mesh->origin().x + h * static_cast<double>(c.ix),
                   s.box_mesh->origin().y + h * static_cast<double>(c.iy)};
  const double margin = h / 20.0;
  return axis_profile(x.x, lo.x, h, margin) * axis_profile(x.y, lo.y, h, margin);
}

namespace {

// Accumulate raw bumps at x: numerator over W3 (weighted), denominator over
// every exterior cell.
void bump_sums(const ExteriorStructure& s, const Vec2& x,
               const std::vector<std::complex<double>>* partner_means,
               std::complex<double>* num, double* den, double* w3_raw) {
  *num = {0.0, 0.0};
  *den = 0.0;
  if (w3_raw) *w3_raw = 0.0;
  for (int e = 0; e < static_cast<int>(s.exterior_cells.size()); ++e) {
    const double b = bump_raw(s, e, x);
    if (b == 0.0) continue;
    *den += b;
    if (s.in_w3[e]) {
      if (w3_raw) *w3_raw += b;
      if (partner_means) *num += b * (*partner_means)[s.partner[e]];
    }
  }
}

}  // namespace

double bump_weight(const ExteriorStructure& s, int ext_cell, const Vec2& x) {
  if (!s.in_w3[ext_cell]) return 0.0;
  const double b = bump_raw(s, ext_cell, x);
  if (b == 0.0) return 0.0;
  std::complex<double> num;
  double den = 0.0;
  bump_sums(s, x, nullptr, &num, &den, nullptr);
  return b / den;
}

double partition_sum(const ExteriorStructure& s, const Vec2& x) {
  std::complex<double> num;
  double den = 0.0, w3 = 0.0;
  bump_sums(s, x, nullptr, &num, &den, &w3);
  return den == 0.0 ? 0.0 : w3 / den;
}

GridFunction extend(const GridFunction& f, const ExteriorStructure& s) {
  if (f.mesh_ptr().get() != s.interior_mesh.get() &&
      f.mesh().n_cells() != s.interior_mesh->n_cells())
    throw std::invalid_argument("function is not sampled on the structure's interior cover");

  const Mesh& box = *s.box_mesh;
  GridFunction out(s.box_mesh, f.nodes_per_side(), f.is_real());

  const int n_int = box.n_interior_cells();
  for (int c = 0; c < n_int; ++c)
    for (int k = 0; k < f.nodes_per_cell(); ++k) out.set_value(c, k, f.value(c, k));

  std::vector<std::complex<double>> means(n_int);
  for (int c = 0; c < n_int; ++c) means[c] = f.cell_mean(c);

  for (int c = n_int; c < box.n_cells(); ++c) {
    for (int k = 0; k < out.nodes_per_cell(); ++k) {
      const Vec2 x = out.node_point(c, k);
      std::complex<double> num;
      double den = 0.0;
      bump_sums(s, x, &means, &num, &den, nullptr);
      out.set_value(c, k, den == 0.0 ? std::complex<double>{0.0, 0.0} : num / den);
    }
  }
  return out;
}

ExtensionRatioReport extension_norm_ratio(const GridFunction& f, const SeminormParams& params,
                                          const ExteriorStructure& s, int refine) {
  if (!params.valid_for_difference_norm())
    throw std::invalid_argument("requires s > d/p - d/q with s in (0,1), p,q in (1,infty)");

  ExtensionRatioReport rep;
  SeminormOptions opt;
  opt.variant = SeminormVariant::Full;
  opt.refine = refine;
  rep.denominator = seminorm(f, params, opt);

  const GridFunction ext = extend(f, s);
  rep.numerator = seminorm(ext, params, opt);

  bool constant = true;
  for (int i = 1; i < static_cast<int>(f.values().size()); ++i)
    if (f.values()[i] != f.values()[0]) {
      constant = false;
      break;
    }
  if (constant) {
    rep.constant_input = true;
    rep.ratio = rep.numerator.lp_part / rep.denominator.lp_part;
    return rep;
  }
  if (rep.denominator.seminorm_part == 0.0) {
    rep.zero_denominator = true;
    rep.ratio = 0.0;
    return rep;
  }
  rep.ratio = rep.numerator.total / rep.denominator.total;
  return rep;
}

std::pair<double, double> partner_distance_window(const ExteriorStructure& s, int n_samples,
                                                  unsigned seed) {
  std::vector<int> w3;
  for (int e = 0; e < static_cast<int>(s.exterior_cells.size()); ++e)
    if (s.in_w3[e]) w3.push_back(e);
  if (w3.size() < 2) return {1.0, 1.0};

  const Mesh& box = *s.box_mesh;
  const Mesh& in = *s.interior_mesh;
  auto ext_geometry = [&](int e) {
    const DyadicCube& c = s.exterior_cells[e];
    const double h = box.root_scale() * std::exp2(static_cast<double>(-c.level));
    const Vec2 lo = {box.origin().x + h * static_cast<double>(c.ix),
                     box.origin().y + h * static_cast<double>(c.iy)};
    return std::pair<Vec2, double>{lo, h};
  };

  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(w3.size()) - 1);
  double lo_ratio = std::numeric_limits<double>::infinity(), hi_ratio = 0.0;
  for (int t = 0; t < n_samples; ++t) {
    const int e1 = w3[pick(rng)];
    const int e2 = w3[pick(rng)];
    if (e1 == e2) continue;
    auto [lo1, h1] = ext_geometry(e1);
    auto [lo2, h2] = ext_geometry(e2);
    const double d = h1 + h2 + square_set_distance(lo1, h1, lo2, h2);
    const int p1 = s.partner[e1], p2 = s.partner[e2];
    const double dp = in.side(p1) + in.side(p2) +
                      square_set_distance(in.lower(p1), in.side(p1), in.lower(p2), in.side(p2));
    const double ratio = dp / d;
    lo_ratio = std::min(lo_ratio, ratio);
    hi_ratio = std::max(hi_ratio, ratio);
  }
  return {lo_ratio, hi_ratio};
}

}  // namespace fracspace
