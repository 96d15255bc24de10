#ifndef FRACSPACE_CZO_HPP
#define FRACSPACE_CZO_HPP

#include <complex>
#include <functional>

#include "fracspace/seminorm.hpp"

namespace fracspace {

// Convolution Calderon-Zygmund kernel with its size/smoothness constant
// and Holder order:
//   |K(x)| <= C_K / |x|^d,   |K(x-y) - K(x)| <= C_K |y|^sigma / |x|^{d+sigma}.
struct KernelSpec {
  std::string id;
  double c_k = 0.0;
  double sigma = 1.0;
  std::function<std::complex<double>(Vec2)> evaluate;

  static KernelSpec beurling();
  static KernelSpec riesz(int axis);  // axis 1 or 2
  static KernelSpec custom(std::function<std::complex<double>(Vec2)> k, double c_k, double sigma);
};

struct KernelReport {
  double max_size_quotient = 0.0;    // sup |K(x)| |x|^d over samples
  double max_smooth_quotient = 0.0;  // sup |K(x-y)-K(x)| |x|^{d+s} / |y|^s
  bool size_ok = false;
  bool smooth_ok = false;
  int n_samples = 0;
  unsigned seed = 0;
};

KernelReport verify_kernel(const KernelSpec& spec, int n_samples, unsigned seed);

// Principal-value scheme: node cells near the singular point are
// integrated in exact polar geometry around x (theta midpoints, log-radial
// midpoints between the ray's entry and exit of each cell) outside the
// exclusion disk; everything else uses midpoint sums with touching cells
// refined to subcells. Exclusion radii delta_j = 2^-j delta_0 with delta_0
// half the side of the node subcell; symmetric stencils cancel mean-zero
// kernels ring by ring at machine precision.
struct PVQuadrature {
  int j_levels = 6;
  int n_theta = 48;   // angular midpoints, multiple of 4
  int n_radial = 4;   // log-radial midpoints per ray segment
  int refine = 2;     // subcell generations for touching cells
  double tol = 1e-9;
};

struct PVResult {
  std::complex<double> value{0.0, 0.0};
  bool converged = false;
  std::vector<std::complex<double>> sequence;  // partial values as delta_j shrinks
};

PVResult pv_apply(const KernelSpec& spec, const GridFunction& f, const Vec2& x,
                  const PVQuadrature& quad);

// T_Omega f = chi_Omega T(chi_Omega f): input samples are masked to the
// open domain, output vanishes at nodes outside it.
GridFunction truncated_apply(const KernelSpec& spec, const GridFunction& f,
                             const PVQuadrature& quad, int* n_nonconverged = nullptr);

struct T1Report {
  double lp = 0.0, grad_lp = 0.0, total = 0.0;           // all cells
  double lp_nc = 0.0, grad_lp_nc = 0.0, total_nc = 0.0;  // collar ring excluded
  bool s_hypothesis_warning = false;                     // s <= d/p
  std::vector<std::pair<int, double>> worst_cubes;       // top gradient contributions
  int n_nonconverged = 0;
};

// Numerical T(1) harness: g = T_Omega 1 node-wise, then ||g||_Lp plus the
// L^p norm of the shadow fractional gradient of g.
T1Report t1_check(const KernelSpec& spec, std::shared_ptr<const Mesh> interior_mesh,
                  const SeminormParams& params, const ShadowIndex& shadows,
                  const PVQuadrature& quad, int m, int refine = 2,
                  GridFunction* transform_out = nullptr);

struct TransformBoundReport {
  double lhs = 0.0;    // sum_Q || grad^s_q T_Omega (f - f_Q) ||_{L^p(Q)}^p
  double denom = 0.0;  // (||f||_Lp + shadow seminorm)^p
  double ratio = 0.0;
  bool zero_denominator = false;
};

TransformBoundReport transform_bound_ratio(const KernelSpec& spec, const GridFunction& f,
                               const SeminormParams& params, const ShadowIndex& shadows,
                               const PVQuadrature& quad, int refine = 2);

}  // namespace fracspace

#endif
