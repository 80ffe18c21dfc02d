#pragma once

#include <set>

#include "instab/cones.hpp"

namespace instab {

struct FormalFan {
  int ambient_dim = 0;
  std::vector<RationalCone> pieces;
  bool classical_fan_certified = false;
};

FormalFan formal_fan(int ambient_dim, std::vector<RationalCone> pieces);

// Membership of an N x n matrix M in F_n: injective, nonzero columns, and all
// columns land in a single piece.
bool fan_cones(const FormalFan& F, int n, const ZMat& M);

bool realization_contains(const FormalFan& F, const QVec& x);

// Pullback along phi: pieces are preimages intersected with the nonnegative
// orthant of the source.
FormalFan restrict(const FormalFan& F, const ConeMorphism& phi);

// pi: N_prime x N full-row-rank matrix; pieces are pi^{-1}(sigma_i).
FormalFan toric_degeneration_fan(const Fan& sigma, const ZMat& pi);

struct DegenerationModel {
  ZMat weights;  // n x k: row i = torus weights of coordinate i
  std::vector<std::set<int>> excluded_supports;

  int n() const { return static_cast<int>(weights.size()); }
  int k() const { return weights.empty() ? 0 : static_cast<int>(weights[0].size()); }
  bool allows(const std::set<int>& support) const;
  static DegenerationModel punctured(ZMat weights);  // excludes the empty support
};

// {lambda : A_i . lambda >= 0 for all i in S}  (1-based indices in S)
RationalCone admissible_cone(const DegenerationModel& D, const std::set<int>& S);

}  // namespace instab
