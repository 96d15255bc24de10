#ifndef FRACSPACE_SHARPNESS_HPP
#define FRACSPACE_SHARPNESS_HPP

#include <vector>

#include "fracspace/seminorm.hpp"

namespace fracspace {

struct SlopeReport {
  std::vector<double> radii;
  std::vector<double> values;  // truncated seminorm^p over |x| <= R
  double slope = 0.0;          // least-squares log-log slope
  double expected_slope = 0.0; // d - s p - d p / q
};

// Divergence-rate experiment in the violated regime s <= d/p - d/q: the
// outer integral of the full free-space seminorm^p of a fixed radial cubic
// bump, truncated to |x| <= R, grows like R^{d - sp - dp/q}. Refuses to run
// in the valid regime.
SlopeReport sharpness_experiment(const SeminormParams& params, const std::vector<double>& radii);

}  // namespace fracspace

#endif
