#ifndef FRACSPACE_EXTENSION_HPP
#define FRACSPACE_EXTENSION_HPP

#include <memory>

#include "fracspace/seminorm.hpp"

namespace fracspace {

// Pairing of exterior cells with same-size interior partners plus the
// associated bump family. Exterior frontier cells take part (they carry
// the collar next to the boundary); partners may be interior frontier
// cells at the same lattice level.
struct ExteriorStructure {
  std::shared_ptr<const Mesh> interior_mesh;
  std::shared_ptr<const Mesh> box_mesh;

  // Indexed by exterior-cover cell.
  std::vector<DyadicCube> exterior_cells;
  std::vector<int> partner;  // interior cell index, -1 when none
  std::vector<char> in_w3;
  std::vector<char> in_w4;
  std::vector<std::vector<int>> exterior_adjacency;

  double size_cap = 0.0;               // absolute side-length cap for W3
  double partner_distance_constant = 0.0;  // max D(Q,Q*)/l(Q) over W3
  int max_partner_overlap = 0;         // max #{Q : Q* = S}
  double bump_lipschitz_factor = 30.0; // |grad psi| <= factor / l(Q)

  int n_w3 = 0;
  int n_w4 = 0;
};

// Partner search radius: same-level interior cells with D(Q,S) <= 8 l(Q),
// nearest D wins (ties to the lowest index). W3 keeps partnered cells with
// l(Q) <= size_cap_factor * (largest accepted interior side). Throws when a
// cell under the cap finds no partner (interior cover too shallow).
ExteriorStructure build_exterior_structure(const WhitneyCover& interior,
                                           const WhitneyCover& exterior,
                                           double size_cap_factor = 1.0);

// Raw tensor-cubic bump of one exterior cell: plateau exactly the cell,
// support exactly (11/10) of it.
double bump_raw(const ExteriorStructure& s, int ext_cell, const Vec2& x);
// Normalized psi of a W3 cell at x (0 for cells outside W3).
double bump_weight(const ExteriorStructure& s, int ext_cell, const Vec2& x);
// Sum of normalized W3 bumps at x; equals 1 on W4 plateaus.
double partition_sum(const ExteriorStructure& s, const Vec2& x);

// Jones extension: interior nodes keep f bit-exactly, exterior nodes get
// the bump-weighted partner means, zero beyond every W3 support.
GridFunction extend(const GridFunction& f, const ExteriorStructure& s);

struct ExtensionRatioReport {
  NormReport numerator;    // box norm of the extension (tail reported)
  NormReport denominator;  // domain norm of f
  double ratio = 0.0;
  bool zero_denominator = false;  // seminorm 0 with nonconstant samples
  bool constant_input = false;    // ratio of L^p parts only
};

ExtensionRatioReport extension_norm_ratio(const GridFunction& f, const SeminormParams& params,
                                          const ExteriorStructure& s, int refine = 2);

// Long-distance invariance of the pairing: min and max of
// D(Q1*,Q2*)/D(Q1,Q2) over sampled W3 pairs.
std::pair<double, double> partner_distance_window(const ExteriorStructure& s, int n_samples,
                                                  unsigned seed);

}  // namespace fracspace

#endif
