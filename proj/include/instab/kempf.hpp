#pragma once

#include <optional>

#include "instab/formalfan.hpp"
#include "instab/invariants.hpp"

namespace instab {

struct DestabResult {
  enum class Status { Unstable, SemistableNonPositive };
  Status status = Status::SemistableNonPositive;
  MuValue value;
  std::vector<Ray> argmax_rays;
  std::vector<int> cone_indices;
  bool unique = false;
};

// Active-set maximization of l(x)/sqrt(x^T B x) over a simplicial cone.
// Returns nullopt when no direction has positive linear value.
std::optional<std::pair<Ray, MuValue>> maximize_on_simplicial_cone(const QVec& l, const QMat& B,
                                                                   const RationalCone& C);

// Covers an arbitrary cone by simplicial subcones (overlaps allowed); used to
// reduce fan maximization to the simplicial solver.
std::vector<RationalCone> pointed_simplicial_cover(const RationalCone& C);

// inv's per-cone data is indexed against F.pieces.
DestabResult maximize_on_fan(const NumericalInvariant& inv, const FormalFan& F);

// Single global (l, b) applied to every piece.
DestabResult maximize_on_fan(const QVec& l, const QMat& B, const FormalFan& F);

NumericalInvariant uniform_invariant(const QVec& l, const QMat& B, const FormalFan& F);

// Midpoint convexity of mu along the segment spanned by gamma's two rays,
// plus non-constancy; exact decisions on `samples` random chords.
bool convexity_check(const NumericalInvariant& inv, const ConeMorphism& gamma, int samples,
                     unsigned long seed = 0);

}  // namespace instab
