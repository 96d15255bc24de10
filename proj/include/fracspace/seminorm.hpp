#ifndef FRACSPACE_SEMINORM_HPP
#define FRACSPACE_SEMINORM_HPP

#include <string>

#include "fracspace/chains.hpp"
#include "fracspace/gridfn.hpp"

namespace fracspace {

struct SeminormParams {
  double s = 0.5;
  double p = 2.0;
  double q = 2.0;
  int d = 2;

  // Difference characterization hypothesis: s > d/p - d/q.
  bool valid_for_difference_norm() const {
    return s > 0.0 && s < 1.0 && p > 1.0 && q > 1.0 && s > d / p - d / q;
  }
  // Local-ball reduction hypothesis: 1 < q <= p < infinity.
  bool valid_for_ball() const { return p > 1.0 && q > 1.0 && q <= p; }
};

enum class SeminormVariant { Full, Shadow, Ball };

struct NormReport {
  double lp_part = 0.0;
  double seminorm_part = 0.0;
  double total = 0.0;
  std::string variant;
  double rho = 0.0;  // shadow ratio or ball factor, per variant
  int m = 0;
  int max_level = 0;
  int refine = 0;
  double tail_estimate = 0.0;       // far-field bound, full variant on a box mesh
  double collar_measure = 0.0;      // total area of frontier cells
  double uncovered_measure = 0.0;   // region area not covered by accepted cubes
  double excluded_cell_bound = 0.0; // bound on the skipped self-cell contribution
};

// Midpoint-rule L^p norm over all cells of the mesh (frontier included).
// uncovered, when given, receives the measure of the region missed by
// accepted cubes.
double lp_norm(const GridFunction& f, double p, bool skip_frontier = false,
               double* uncovered = nullptr);

struct SeminormOptions {
  SeminormVariant variant = SeminormVariant::Full;
  const ShadowIndex* shadows = nullptr;  // required for the shadow variant
  double rho_ball = 0.0;                 // required for the ball variant, in (0,1)
  int refine = 2;                        // near-diagonal subcell generations
  bool skip_frontier = false;
};

// Discretization of
//   ( int ( int_{range(x)} |f(x)-f(y)|^q / |x-y|^{sq+d} dy )^{p/q} dx )^{1/p}
// with range(x) the whole mesh (full), the shadow of x's cell (shadow), or
// B(x, rho * delta(x)) (ball). Node pairs in touching cells use refined
// subcell midpoints with the self subcell of x excluded (its contribution
// is bounded and reported, never added).
NormReport seminorm(const GridFunction& f, const SeminormParams& params,
                    const SeminormOptions& options);

// Inner integral at one outer node, to the power 1/q; the shadow variant's
// integrand at a single x. Shares the seminorm quadrature exactly.
double fractional_gradient(const GridFunction& f, const SeminormParams& params,
                           const ShadowIndex& shadows, int cell, int node, int refine = 2);

// q-th power inner integral at one outer node (shared quadrature core).
double inner_integral_q(const GridFunction& f, const SeminormParams& params,
                        const SeminormOptions& options, int cell, int node,
                        double* excluded_bound = nullptr);

}  // namespace fracspace

#endif
