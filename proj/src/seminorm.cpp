#include "fracspace/seminorm.hpp"

#include <cmath>
#include <stdexcept>

#include "fracspace/threading.hpp"

namespace fracspace {

double lp_norm(const GridFunction& f, double p, bool skip_frontier, double* uncovered) {
  if (p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
  const Mesh& mesh = f.mesh();
  double sum = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    if (skip_frontier && mesh.frontier(c)) continue;
    const double w = f.node_weight(c);
    for (int k = 0; k < f.nodes_per_cell(); ++k)
      sum += std::pow(std::abs(f.value(c, k)), p) * w;
  }
  if (uncovered) {
    double accepted_area = 0.0;
    for (int c = 0; c < mesh.n_cells(); ++c)
      if (!mesh.frontier(c)) accepted_area += mesh.side(c) * mesh.side(c);
    const double region =
        mesh.is_box() ? mesh.box_side() * mesh.box_side() : mesh.domain().area();
    *uncovered = region - accepted_area;
  }
  return std::pow(sum, 1.0 / p);
}

namespace {

void validate_options(const SeminormParams& params, const SeminormOptions& options) {
  if (options.variant == SeminormVariant::Ball) {
    if (!params.valid_for_ball())
      throw std::invalid_argument("ball variant requires 1<q<=p<infty");
    if (!(options.rho_ball > 0.0 && options.rho_ball < 1.0))
      throw std::invalid_argument("ball variant requires rho in (0,1)");
  } else {
    if (!params.valid_for_difference_norm())
      throw std::invalid_argument("requires s > d/p - d/q with s in (0,1), p,q in (1,infty)");
    if (options.variant == SeminormVariant::Shadow && options.shadows == nullptr)
      throw std::invalid_argument("shadow variant needs a shadow index");
  }
  if (options.refine < 0) throw std::invalid_argument("refine must be nonnegative");
}

// Local Lipschitz proxy at a node: max difference quotient against the
// other nodes of the cell, or against touching cells' nodes when m = 1.
double lipschitz_proxy(const GridFunction& f, int cell, int node) {
  const Vec2 x = f.node_point(cell, node);
  const std::complex<double> fx = f.value(cell, node);
  double lip = 0.0;
  if (f.nodes_per_side() > 1) {
    for (int k = 0; k < f.nodes_per_cell(); ++k) {
      if (k == node) continue;
      const double d = dist(f.node_point(cell, k), x);
      lip = std::max(lip, std::abs(f.value(cell, k) - fx) / d);
    }
    return lip;
  }
  const Mesh& mesh = f.mesh();
  for (int j = 0; j < mesh.n_cells(); ++j) {
    if (j == cell || !mesh.touching(cell, j)) continue;
    const double d = dist(f.node_point(j, 0), x);
    lip = std::max(lip, std::abs(f.value(j, 0) - fx) / d);
  }
  return lip;
}

}  // namespace

double inner_integral_q(const GridFunction& f, const SeminormParams& params,
                        const SeminormOptions& options, int cell, int node,
                        double* excluded_bound) {
  const Mesh& mesh = f.mesh();
  const int m = f.nodes_per_side();
  const Vec2 x = f.node_point(cell, node);
  const std::complex<double> fx = f.value(cell, node);
  const double kernel_pow = params.s * params.q + params.d;

  double ball_r = std::numeric_limits<double>::infinity();
  if (options.variant == SeminormVariant::Ball)
    ball_r = options.rho_ball * mesh.domain().distance_to_boundary(x);

  const std::vector<int>* members = nullptr;
  if (options.variant == SeminormVariant::Shadow) members = &options.shadows->members(cell);

  const int sub = 1 << options.refine;
  double sum = 0.0;

  const int n_range = members ? static_cast<int>(members->size()) : mesh.n_cells();
  for (int r = 0; r < n_range; ++r) {
    const int j = members ? (*members)[r] : r;
    if (options.skip_frontier && mesh.frontier(j)) continue;
    if (options.variant == SeminormVariant::Ball && mesh.cell_set_distance(j, x) > ball_r)
      continue;
    const double hj = mesh.side(j);
    const Vec2 lo = mesh.lower(j);
    if (mesh.touching(cell, j)) {
      const double hsub = hj / (m * sub);
      const double w = hsub * hsub;
      for (int k = 0; k < m * m; ++k) {
        if (j == cell && k == node) continue;  // self node cell: excluded, bounded below
        const std::complex<double> fy = f.value(j, k);
        const double aq = std::pow(std::abs(fx - fy), params.q);
        const int a = k % m, b = k / m;
        for (int sy = 0; sy < sub; ++sy) {
          for (int sx = 0; sx < sub; ++sx) {
            const Vec2 y = {lo.x + hj * a / m + hsub * (sx + 0.5),
                            lo.y + hj * b / m + hsub * (sy + 0.5)};
            const double d = dist(x, y);
            if (d > ball_r) continue;
            sum += aq / std::pow(d, kernel_pow) * w;
          }
        }
      }
    } else {
      const double w = (hj / m) * (hj / m);
      for (int k = 0; k < m * m; ++k) {
        const Vec2 y = f.node_point(j, k);
        const double d = dist(x, y);
        if (d > ball_r) continue;
        sum += std::pow(std::abs(fx - f.value(j, k)), params.q) / std::pow(d, kernel_pow) * w;
      }
    }
  }

  if (excluded_bound) {
    // The skipped cell around x contributes at most
    // Lip^q * 2 pi * rmax^{(1-s)q} / ((1-s)q), rmax the cell half-diagonal.
    const double lip = lipschitz_proxy(f, cell, node);
    const double rmax = (mesh.side(cell) / m) * std::sqrt(0.5);
    const double e = (1.0 - params.s) * params.q;
    *excluded_bound = std::pow(lip, params.q) * 2.0 * M_PI * std::pow(rmax, e) / e;
  }
  return sum;
}

NormReport seminorm(const GridFunction& f, const SeminormParams& params,
                    const SeminormOptions& options) {
  validate_options(params, options);
  const Mesh& mesh = f.mesh();
  const int nn = f.nodes_per_cell();

  NormReport rep;
  rep.m = f.nodes_per_side();
  rep.refine = options.refine;
  for (int c = 0; c < mesh.n_cells(); ++c)
    rep.max_level = std::max(rep.max_level, mesh.cell(c).level);
  switch (options.variant) {
    case SeminormVariant::Full: rep.variant = "full"; break;
    case SeminormVariant::Shadow:
      rep.variant = "shadow";
      rep.rho = options.shadows->rho();
      break;
    case SeminormVariant::Ball:
      rep.variant = "ball";
      rep.rho = options.rho_ball;
      break;
  }

  const int total_nodes = mesh.n_cells() * nn;
  std::vector<double> contrib(total_nodes, 0.0);
  std::vector<double> excluded(total_nodes, 0.0);
  std::vector<double> tail(total_nodes, 0.0);
  const double pq = params.p / params.q;
  const bool with_tail = options.variant == SeminormVariant::Full && mesh.is_box();

  parallel_for(total_nodes, [&](int idx) {
    const int c = idx / nn;
    const int k = idx % nn;
    if (options.skip_frontier && mesh.frontier(c)) return;
    double bound = 0.0;
    const double inner = inner_integral_q(f, params, options, c, k, &bound);
    const double w = f.node_weight(c);
    contrib[idx] = w * std::pow(inner, pq);
    excluded[idx] = w * std::pow(bound, pq);
    if (with_tail) {
      // f vanishes beyond the computation box, so the inner integral over
      // that far field is bounded by |f(x)|^q times the closed form of
      // int_{|x-y|>R} |x-y|^{-sq-d} dy.
      const double margin = std::max(mesh.box_margin(f.node_point(c, k)), mesh.side(c) / (2 * rep.m));
      const double sq = params.s * params.q;
      const double t =
          std::pow(std::abs(f.value(c, k)), params.q) * 2.0 * M_PI * std::pow(margin, -sq) / sq;
      tail[idx] = w * std::pow(t, pq);
    }
  });

  double outer = 0.0, excl = 0.0, tail_sum = 0.0;
  for (int i = 0; i < total_nodes; ++i) {
    outer += contrib[i];
    excl += excluded[i];
    tail_sum += tail[i];
  }
  rep.seminorm_part = std::pow(outer, 1.0 / params.p);
  rep.excluded_cell_bound = std::pow(excl, 1.0 / params.p);
  if (with_tail) rep.tail_estimate = std::pow(tail_sum, 1.0 / params.p);

  double uncovered = 0.0;
  rep.lp_part = lp_norm(f, params.p, options.skip_frontier, &uncovered);
  rep.uncovered_measure = uncovered;
  for (int c = 0; c < mesh.n_cells(); ++c)
    if (mesh.frontier(c)) rep.collar_measure += mesh.side(c) * mesh.side(c);
  rep.total = rep.lp_part + rep.seminorm_part;
  return rep;
}

double fractional_gradient(const GridFunction& f, const SeminormParams& params,
                           const ShadowIndex& shadows, int cell, int node, int refine) {
  if (!params.valid_for_difference_norm())
    throw std::invalid_argument("requires s > d/p - d/q with s in (0,1), p,q in (1,infty)");
  SeminormOptions opt;
  opt.variant = SeminormVariant::Shadow;
  opt.shadows = &shadows;
  opt.refine = refine;
  const double inner = inner_integral_q(f, params, opt, cell, node, nullptr);
  return std::pow(inner, 1.0 / params.q);
}

}  // namespace fracspace
