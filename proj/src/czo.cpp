#include "fracspace/czo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fracspace/threading.hpp"

namespace fracspace {

KernelSpec KernelSpec::beurling() {
  KernelSpec s;
  s.id = "beurling";
  // Smoothness quotient peaks at 6/pi (attained as y -> x/2 along x).
  s.c_k = 6.0 / M_PI;
  s.sigma = 1.0;
  s.evaluate = [](Vec2 v) {
    const std::complex<double> z(v.x, v.y);
    return -1.0 / (M_PI * z * z);
  };
  return s;
}

KernelSpec KernelSpec::riesz(int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("riesz axis must be 1 or 2");
  KernelSpec s;
  s.id = axis == 1 ? "riesz1" : "riesz2";
  s.c_k = 16.0 / M_PI;
  s.sigma = 1.0;
  s.evaluate = [axis](Vec2 v) {
    const double r = v.norm();
    const double num = axis == 1 ? v.x : v.y;
    return std::complex<double>(num / (2.0 * M_PI * r * r * r), 0.0);
  };
  return s;
}

KernelSpec KernelSpec::custom(std::function<std::complex<double>(Vec2)> k, double c_k,
                              double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw std::invalid_argument("sigma must lie in (0,1]");
  if (c_k <= 0.0) throw std::invalid_argument("C_K must be positive");
  KernelSpec s;
  s.id = "custom";
  s.c_k = c_k;
  s.sigma = sigma;
  s.evaluate = std::move(k);
  return s;
}

KernelReport verify_kernel(const KernelSpec& spec, int n_samples, unsigned seed) {
  KernelReport rep;
  rep.n_samples = n_samples;
  rep.seed = seed;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> logr(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> logt(std::log(1e-3), std::log(1.0));

  for (int i = 0; i < n_samples; ++i) {
    const double rx = std::exp(logr(rng));
    const double ax = angle(rng);
    const Vec2 x{rx * std::cos(ax), rx * std::sin(ax)};
    rep.max_size_quotient =
        std::max(rep.max_size_quotient, std::abs(spec.evaluate(x)) * rx * rx);

    // 0 < 2|y| <= |x| with log-uniform |y|.
    const double ry = 0.5 * rx * std::exp(logt(rng));
    const double ay = angle(rng);
    const Vec2 y{ry * std::cos(ay), ry * std::sin(ay)};
    const double diff = std::abs(spec.evaluate(x - y) - spec.evaluate(x));
    const double quotient = diff * std::pow(rx, 2.0 + spec.sigma) / std::pow(ry, spec.sigma);
    rep.max_smooth_quotient = std::max(rep.max_smooth_quotient, quotient);
  }
  rep.size_ok = rep.max_size_quotient <= spec.c_k * (1.0 + 1e-9);
  rep.smooth_ok = rep.max_smooth_quotient <= spec.c_k * (1.0 + 1e-9);
  return rep;
}

namespace {

// Entry/exit parameters of the ray x + t (c,s), t > 0, through a closed
// rectangle (slab method). Returns false when the ray misses it.
bool ray_rect(const Vec2& x, double c, double s, const Vec2& lo, const Vec2& hi, double* t_in,
              double* t_out) {
  double t0 = 0.0, t1 = std::numeric_limits<double>::infinity();
  auto slab = [&](double d, double a, double b, double p) {
    if (d == 0.0) return p >= a && p <= b;
    double u = (a - p) / d, v = (b - p) / d;
    if (u > v) std::swap(u, v);
    t0 = std::max(t0, u);
    t1 = std::min(t1, v);
    return true;
  };
  if (!slab(c, lo.x, hi.x, x.x) || !slab(s, lo.y, hi.y, x.y)) return false;
  if (t1 <= t0) return false;
  *t_in = t0;
  *t_out = t1;
  return true;
}

// Integral of K(x-y) f over a rectangle minus the disk of the given cutoff
// radius around x, region-exact in polar coordinates: theta midpoints over
// the full circle, log-radial midpoints along each ray between the exact
// entry and exit of the rectangle.
std::complex<double> polar_rect_integral(const KernelSpec& spec, const Vec2& x, const Vec2& lo,
                                         const Vec2& hi, std::complex<double> fval, double cutoff,
                                         int n_theta, int n_rho) {
  std::complex<double> sum{0.0, 0.0};
  const double dth = 2.0 * M_PI / n_theta;
  for (int it = 0; it < n_theta; ++it) {
    const double th = dth * (it + 0.5);
    const double c = std::cos(th), s = std::sin(th);
    double t_in = 0.0, t_out = 0.0;
    if (!ray_rect(x, c, s, lo, hi, &t_in, &t_out)) continue;
    const double r0 = std::max(t_in, cutoff);
    if (r0 >= t_out) continue;
    const double u0 = std::log(r0), u1 = std::log(t_out);
    const double du = (u1 - u0) / n_rho;
    for (int ir = 0; ir < n_rho; ++ir) {
      const double rho = std::exp(u0 + (ir + 0.5) * du);
      sum += spec.evaluate({-rho * c, -rho * s}) * (rho * rho * du * dth);
    }
  }
  return sum * fval;
}

}  // namespace

PVResult pv_apply(const KernelSpec& spec, const GridFunction& f, const Vec2& x,
                  const PVQuadrature& quad) {
  const Mesh& mesh = f.mesh();
  const int m = f.nodes_per_side();
  const int sub = 1 << quad.refine;
  const int own = mesh.cell_of_point(x);
  const double spacing = own >= 0 ? mesh.side(own) / m : 0.0;
  const double delta0 = spacing / (2.0 * sub);

  // Node cells close to x are integrated in exact polar geometry; all other
  // quadrature is midpoint sums (touching cells refined to subcells).
  struct NearRect {
    Vec2 lo, hi;
    std::complex<double> fval;
  };
  std::vector<NearRect> near_rects;

  std::complex<double> far{0.0, 0.0};
  for (int j = 0; j < mesh.n_cells(); ++j) {
    const double hj = mesh.side(j);
    const Vec2 lo = mesh.lower(j);
    const bool touching = own >= 0 ? mesh.touching(own, j)
                                   : mesh.cell_set_distance(j, x) < hj;
    if (!touching) {
      const double w = (hj / m) * (hj / m);
      for (int k = 0; k < m * m; ++k) {
        const std::complex<double> fy = f.value(j, k);
        if (fy == std::complex<double>{0.0, 0.0}) continue;
        far += spec.evaluate(x - f.node_point(j, k)) * fy * w;
      }
      continue;
    }
    const double hnode = hj / m;
    const double hsub = hnode / sub;
    const double w = hsub * hsub;
    for (int k = 0; k < m * m; ++k) {
      const int a = k % m, b = k / m;
      const Vec2 nlo = {lo.x + hnode * a, lo.y + hnode * b};
      const Vec2 nhi = {nlo.x + hnode, nlo.y + hnode};
      const double gx = std::max({nlo.x - x.x, x.x - nhi.x, 0.0});
      const double gy = std::max({nlo.y - x.y, x.y - nhi.y, 0.0});
      if (std::hypot(gx, gy) < spacing) {
        near_rects.push_back({nlo, nhi, f.value(j, k)});
        continue;
      }
      const std::complex<double> fy = f.value(j, k);
      if (fy == std::complex<double>{0.0, 0.0}) continue;
      for (int sy = 0; sy < sub; ++sy) {
        for (int sx = 0; sx < sub; ++sx) {
          const Vec2 y = {nlo.x + hsub * (sx + 0.5), nlo.y + hsub * (sy + 0.5)};
          far += spec.evaluate(x - y) * fy * w;
        }
      }
    }
  }

  PVResult res;
  if (own < 0) {
    res.sequence.push_back(far);
    res.value = far;
    res.converged = true;
    return res;
  }

  // Shrinking exclusion radii delta_j = 2^-j delta_0.
  for (int k = 0; k <= quad.j_levels; ++k) {
    const double cutoff = delta0 * std::exp2(static_cast<double>(-k));
    std::complex<double> v = far;
    for (const NearRect& r : near_rects) {
      if (r.fval == std::complex<double>{0.0, 0.0}) continue;
      v += polar_rect_integral(spec, x, r.lo, r.hi, r.fval, cutoff, quad.n_theta, quad.n_radial);
    }
    res.sequence.push_back(v);
  }
  res.value = res.sequence.back();
  const std::size_t n = res.sequence.size();
  const double change = n >= 2 ? std::abs(res.sequence[n - 1] - res.sequence[n - 2]) : 0.0;
  res.converged = change <= quad.tol * std::max(1.0, std::abs(res.value));
  return res;
}

GridFunction truncated_apply(const KernelSpec& spec, const GridFunction& f,
                             const PVQuadrature& quad, int* n_nonconverged) {
  const Mesh& mesh = f.mesh();
  const Domain& domain = mesh.domain();

  GridFunction masked = f;
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int k = 0; k < f.nodes_per_cell(); ++k)
      if (!domain.contains(f.node_point(c, k))) masked.set_value(c, k, {0.0, 0.0});

  GridFunction out(f.mesh_ptr(), f.nodes_per_side(), false);
  const int nn = f.nodes_per_cell();
  std::vector<char> bad(mesh.n_cells() * nn, 0);
  parallel_for(mesh.n_cells() * nn, [&](int idx) {
    const int c = idx / nn, k = idx % nn;
    const Vec2 x = f.node_point(c, k);
    if (!domain.contains(x)) return;  // leading chi_Omega
    const PVResult r = pv_apply(spec, masked, x, quad);
    out.set_value(c, k, r.value);
    bad[idx] = r.converged ? 0 : 1;
  });
  if (n_nonconverged) {
    *n_nonconverged = 0;
    for (char b : bad) *n_nonconverged += b;
  }
  return out;
}

T1Report t1_check(const KernelSpec& spec, std::shared_ptr<const Mesh> interior_mesh,
                  const SeminormParams& params, const ShadowIndex& shadows,
                  const PVQuadrature& quad, int m, int refine, GridFunction* transform_out) {
  if (!params.valid_for_difference_norm())
    throw std::invalid_argument("requires s > d/p - d/q with s in (0,1), p,q in (1,infty)");
  T1Report rep;
  rep.s_hypothesis_warning = params.s <= params.d / params.p;

  const GridFunction ones = sample_function(interior_mesh, builtin_function("const"), m);
  const GridFunction g = truncated_apply(spec, ones, quad, &rep.n_nonconverged);
  const Mesh& mesh = g.mesh();

  rep.lp = lp_norm(g, params.p, false);
  rep.lp_nc = lp_norm(g, params.p, true);

  SeminormOptions opt;
  opt.variant = SeminormVariant::Shadow;
  opt.shadows = &shadows;
  opt.refine = refine;
  SeminormOptions opt_nc = opt;
  opt_nc.skip_frontier = true;

  const int nn = g.nodes_per_cell();
  std::vector<double> grad_all(mesh.n_cells() * nn, 0.0), grad_nc(mesh.n_cells() * nn, 0.0);
  parallel_for(mesh.n_cells() * nn, [&](int idx) {
    const int c = idx / nn, k = idx % nn;
    grad_all[idx] = std::pow(inner_integral_q(g, params, opt, c, k), params.p / params.q);
    if (!mesh.frontier(c))
      grad_nc[idx] = std::pow(inner_integral_q(g, params, opt_nc, c, k), params.p / params.q);
  });

  std::vector<std::pair<int, double>> per_cell(mesh.n_cells());
  double sum_all = 0.0, sum_nc = 0.0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const double w = g.node_weight(c);
    double cell_sum = 0.0, cell_sum_nc = 0.0;
    for (int k = 0; k < nn; ++k) {
      cell_sum += w * grad_all[c * nn + k];
      cell_sum_nc += w * grad_nc[c * nn + k];
    }
    per_cell[c] = {c, cell_sum};
    sum_all += cell_sum;
    if (!mesh.frontier(c)) sum_nc += cell_sum_nc;
  }
  rep.grad_lp = std::pow(sum_all, 1.0 / params.p);
  rep.grad_lp_nc = std::pow(sum_nc, 1.0 / params.p);
  rep.total = rep.lp + rep.grad_lp;
  rep.total_nc = rep.lp_nc + rep.grad_lp_nc;

  std::sort(per_cell.begin(), per_cell.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  per_cell.resize(std::min<std::size_t>(5, per_cell.size()));
  rep.worst_cubes = std::move(per_cell);
  if (transform_out) *transform_out = g;
  return rep;
}

TransformBoundReport transform_bound_ratio(const KernelSpec& spec, const GridFunction& f,
                               const SeminormParams& params, const ShadowIndex& shadows,
                               const PVQuadrature& quad, int refine) {
  if (!params.valid_for_difference_norm())
    throw std::invalid_argument("requires s > d/p - d/q with s in (0,1), p,q in (1,infty)");
  const Mesh& mesh = f.mesh();
  const Domain& domain = mesh.domain();
  const int nn = f.nodes_per_cell();

  TransformBoundReport rep;

  // Cells whose transforms are needed for the gradient at nodes of Q: Q
  // itself plus its shadow.
  std::vector<double> cell_lhs(mesh.n_cells(), 0.0);
  parallel_for(mesh.n_cells(), [&](int qc) {
    if (mesh.frontier(qc)) return;
    const std::complex<double> f_q = f.cell_mean(qc);

    GridFunction h = f;
    for (auto& v : h.values()) v -= f_q;
    for (int c = 0; c < mesh.n_cells(); ++c)
      for (int k = 0; k < nn; ++k)
        if (!domain.contains(h.node_point(c, k))) h.set_value(c, k, {0.0, 0.0});

    GridFunction g(f.mesh_ptr(), f.nodes_per_side(), false);
    std::vector<int> needed = shadows.members(qc);
    if (std::find(needed.begin(), needed.end(), qc) == needed.end()) needed.push_back(qc);
    for (int c : needed) {
      for (int k = 0; k < nn; ++k) {
        const Vec2 x = g.node_point(c, k);
        if (!domain.contains(x)) continue;
        g.set_value(c, k, pv_apply(spec, h, x, quad).value);
      }
    }

    SeminormOptions opt;
    opt.variant = SeminormVariant::Shadow;
    opt.shadows = &shadows;
    opt.refine = refine;
    const double w = g.node_weight(qc);
    double acc = 0.0;
    for (int k = 0; k < nn; ++k)
      acc += w * std::pow(inner_integral_q(g, params, opt, qc, k), params.p / params.q);
    cell_lhs[qc] = acc;
  });
  for (double v : cell_lhs) rep.lhs += v;

  SeminormOptions opt;
  opt.variant = SeminormVariant::Shadow;
  opt.shadows = &shadows;
  opt.refine = refine;
  const NormReport nf = seminorm(f, params, opt);
  rep.denom = std::pow(nf.total, params.p);
  rep.zero_denominator = rep.denom == 0.0;
  rep.ratio = rep.zero_denominator ? 0.0 : rep.lhs / rep.denom;
  return rep;
}

}  // namespace fracspace
