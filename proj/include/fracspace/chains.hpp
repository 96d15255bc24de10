#ifndef FRACSPACE_CHAINS_HPP
#define FRACSPACE_CHAINS_HPP

#include <vector>

#include "fracspace/geometry.hpp"

namespace fracspace {

// Neighbor path between two Whitney cubes. achieved_eps reports how
// admissible the path is: the min of D(Q,S)/l([Q,S]) and the two growth
// ratios min_{j<=j0} l(Q_j)/D(Q_1,Q_j), min_{j>=j0} l(Q_j)/D(Q_j,Q_M),
// where j0 is the central cube (largest, ties to the lowest index).
struct Chain {
  std::vector<int> cubes;
  int central_index = 0;
  double achieved_eps = 0.0;
  double length = 0.0;  // sum of side lengths along the chain
};

Chain find_chain(const WhitneyCover& cover, int q, int s);

// Recompute the metrics of an arbitrary neighbor path; used both by
// find_chain and by independent checkers.
void compute_chain_metrics(const WhitneyCover& cover, Chain& chain);

// Explicit consequence of the admissibility inequalities:
// l(Q_S) >= eps^2 D(Q,S) / (1 + 2 eps).
bool chain_size_consequence_holds(const WhitneyCover& cover, const Chain& chain);

struct EpsCertificate {
  double eps = 0.0;
  int pairs_tested = 0;
  int worst_q = -1;
  int worst_s = -1;
  double rho_eps = 0.0;  // 0 when no grid value works
  bool rho_ok = false;
  std::string rho_failure;  // empty when rho_ok
  unsigned seed = 0;
};

// Samples cube pairs (all pairs when the cover has <= 200 cubes), builds
// the minimizing chain for each and certifies eps = min achieved_eps
// together with the smallest workable shadow ratio from a fixed grid.
EpsCertificate certify_uniform(const WhitneyCover& cover, int n_pairs, unsigned seed);

// rho-shadow membership lists: cell q belongs to shadow(p) iff the closed
// cell lies in the closed ball B(x_p, rho * l(p)). Built over all cells,
// frontier included.
class ShadowIndex {
public:
  ShadowIndex(const WhitneyCover& cover, double rho);

  const WhitneyCover& cover() const { return *cover_; }
  double rho() const { return rho_; }
  const std::vector<int>& members(int p) const { return members_[p]; }
  // Cells p with q in shadow(p).
  const std::vector<int>& containing(int q) const { return containing_[q]; }
  bool in_shadow(int p, int q) const;

private:
  const WhitneyCover* cover_;
  double rho_;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<int>> containing_;
};

std::vector<int> shadow(const ShadowIndex& index, int p);

struct GeometricSumsReport {
  double max_shadow_sum = 0.0;  // sup_Q l(Q)^s Sum_{L: Q in SH(L)} l(L)^-s
  double max_chain_up = 0.0;    // sup Sum_{L in [Q,P]} l(L)^s / l(P)^s
  double max_chain_down = 0.0;  // sup l(Q)^s Sum_{L in [Q,P]} l(L)^-s
  int chain_pairs = 0;
};

GeometricSumsReport check_geometric_sums(const WhitneyCover& cover, const ShadowIndex& index, double s,
                                   int max_chain_pairs = 400, unsigned seed = 7u);

}  // namespace fracspace

#endif
