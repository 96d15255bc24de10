#include "fracspace/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracspace/gridfn.hpp"
#include "fracspace/threading.hpp"

namespace fracspace {

namespace {

double bump(double r) { return cubic_bump_profile(r); }

// Fixed polar grid over the bump support, midpoints in radius and angle.
struct DiskGrid {
  std::vector<double> yx, yy, fq_w;  // sample point and f(y)^q * weight

  DiskGrid(double q, int n_r = 96, int n_th = 96) {
    const double dr = 1.0 / n_r;
    const double dth = 2.0 * M_PI / n_th;
    for (int i = 0; i < n_r; ++i) {
      const double r = (i + 0.5) * dr;
      const double fq = std::pow(bump(r), q);
      for (int k = 0; k < n_th; ++k) {
        const double th = (k + 0.5) * dth;
        yx.push_back(r * std::cos(th));
        yy.push_back(r * std::sin(th));
        fq_w.push_back(fq * r * dr * dth);
      }
    }
  }
};

// Inner integral int_{R^2} |f(x)-f(y)|^q |x-y|^{-sq-2} dy for the radial
// bump at x = (t, 0). Close to the support the integral runs in polar
// coordinates around x (resolving the |x-y| singularity); far from it,
// where f(x) = 0, it runs over the support grid. The region beyond
// rho = t+1 is added in closed form.
double inner_at(double t, double s, double q, const DiskGrid& disk) {
  const double fx = bump(t);
  const double sq = s * q;

  if (t >= 1.5) {
    double sum = 0.0;
    for (std::size_t i = 0; i < disk.fq_w.size(); ++i) {
      const double d = std::hypot(t - disk.yx[i], disk.yy[i]);
      sum += disk.fq_w[i] * std::pow(d, -sq - 2.0);
    }
    return sum;
  }

  const double rho_min = 1e-4;
  const double rho_max = t + 1.0;
  const int n_theta = 128;
  const int per_octave = 16;
  const int octaves = static_cast<int>(std::ceil(std::log2(rho_max / rho_min)));
  double sum = 0.0;
  double lo = rho_min;
  for (int o = 0; o < octaves; ++o) {
    const double hi = std::min(lo * 2.0, rho_max);
    const double dr = (hi - lo) / per_octave;
    for (int i = 0; i < per_octave; ++i) {
      const double rho = lo + (i + 0.5) * dr;
      // Rings that neither meet the bump support nor carry f(x) contribute 0.
      if (fx == 0.0 && std::abs(rho - t) > 1.0) continue;
      double tsum = 0.0;
      for (int k = 0; k < n_theta; ++k) {
        const double th = 2.0 * M_PI * (k + 0.5) / n_theta;
        const double yx = t + rho * std::cos(th);
        const double yy = rho * std::sin(th);
        const double fy = bump(std::hypot(yx, yy));
        tsum += std::pow(std::abs(fx - fy), q);
      }
      sum += tsum * (2.0 * M_PI / n_theta) * std::pow(rho, -sq - 1.0) * dr;
    }
    lo = hi;
    if (lo >= rho_max) break;
  }
  // Closed-form tail: f(y) = 0 for |y - x| > t + 1.
  if (fx != 0.0) sum += std::pow(fx, q) * 2.0 * M_PI * std::pow(rho_max, -sq) / sq;
  return sum;
}

}  // namespace

SlopeReport sharpness_experiment(const SeminormParams& params, const std::vector<double>& radii) {
  const double boundary = params.d / params.p - params.d / params.q;
  if (params.s > boundary)
    throw std::invalid_argument(
        "sharpness experiment needs the violated regime s <= d/p - d/q; "
        "in the valid regime the outer integral converges");
  if (radii.size() < 2) throw std::invalid_argument("need at least two radii");

  std::vector<double> rs = radii;
  std::sort(rs.begin(), rs.end());
  const double r_max = rs.back();

  // Radial outer integral I(R) = 2 pi int_0^R inner(t)^{p/q} t dt on a
  // log-spaced grid, accumulated once up to each requested radius.
  const double t_min = 1e-3;
  const int per_octave = 16;
  const int octaves = static_cast<int>(std::ceil(std::log2(r_max / t_min)));

  struct Node {
    double t, dt;
  };
  std::vector<Node> grid;
  double lo = t_min;
  for (int o = 0; o < octaves; ++o) {
    const double hi = std::min(lo * 2.0, r_max);
    const double dt = (hi - lo) / per_octave;
    for (int i = 0; i < per_octave; ++i) grid.push_back({lo + (i + 0.5) * dt, dt});
    lo = hi;
    if (lo >= r_max) break;
  }

  const DiskGrid disk(params.q);
  std::vector<double> inner_pq(grid.size(), 0.0);
  parallel_for(static_cast<int>(grid.size()), [&](int i) {
    inner_pq[i] = std::pow(inner_at(grid[i].t, params.s, params.q, disk), params.p / params.q);
  });

  SlopeReport rep;
  rep.expected_slope = params.d - params.s * params.p - params.d * params.p / params.q;
  rep.radii = rs;
  std::size_t gi = 0;
  double acc = 0.0;
  for (double R : rs) {
    while (gi < grid.size() && grid[gi].t <= R) {
      acc += 2.0 * M_PI * inner_pq[gi] * grid[gi].t * grid[gi].dt;
      ++gi;
    }
    rep.values.push_back(acc);
  }

  // Least-squares slope of log I against log R.
  const int n = static_cast<int>(rs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double X = std::log(rs[i]);
    const double Y = std::log(rep.values[i]);
    sx += X;
    sy += Y;
    sxx += X * X;
    sxy += X * Y;
  }
  rep.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return rep;
}

}  // namespace fracspace
