#ifndef FRACSPACE_MAXIMAL_HPP
#define FRACSPACE_MAXIMAL_HPP

#include "fracspace/gridfn.hpp"

namespace fracspace {

// Non-centered maximal value at a node: max mean of g over a finite search
// family of axis-aligned cubes containing the node (the dyadic cube at
// every lattice level plus its half-side shifts). Means are taken against
// the covered measure. Requires g >= 0.
double maximal(const GridFunction& g, int cell, int node);

struct MaximalLemmaReport {
  double nonlocal_lhs = 0.0, nonlocal_rhs = 0.0, nonlocal_ratio = 0.0;
  double local_lhs = 0.0, local_rhs = 0.0, local_ratio = 0.0;
  double sum_lhs = 0.0, sum_rhs = 0.0, sum_ratio = 0.0;
};

// Cube-sum forms of the three maximal-operator inequalities:
//   sum_{D(Q,S)>r} int_S g / D^{d+eta}  vs  inf_Q Mg / r^eta,
//   sum_{D(Q,S)<r} int_S g / D^{d-eta}  vs  inf_Q Mg * r^eta,
//   sum_S l(S)^d / D^{d+eta}            vs  l(Q)^-eta.
// Sums run over accepted Whitney cubes.
MaximalLemmaReport check_maximal_lemma(const GridFunction& g, int q_cell, double eta, double r);

double mesh_long_distance(const Mesh& mesh, int i, int j);

}  // namespace fracspace

#endif
