#pragma once

#include <optional>
#include <set>

#include "instab/kempf.hpp"

namespace instab {

using Support = std::set<int>;  // 1-based coordinate indices

struct Stratum {
  MuValue mu;
  Ray ray;
  Support limit_support;
  std::vector<Support> members;
};

struct ThetaStratification {
  std::vector<Stratum> strata;  // strictly decreasing mu
  std::vector<Support> semistable;
  std::vector<Support> nonunique;  // supports whose destabilizer argmax was tied
};

Support limit_support(const DegenerationModel& D, const Support& S, const ZVec& lambda);

// Maximizes mu over the admissible cone of S, filtering candidates whose limit
// support the model excludes.
DestabResult best_destabilizer(const DegenerationModel& D, const Support& S, const QVec& l,
                               const QMat& B);

ThetaStratification build_stratification(const DegenerationModel& D, const QVec& l, const QMat& B,
                                         int max_n = 16);

struct ClosednessReport {
  bool closed = true;
  std::optional<std::pair<Support, Support>> witness;  // (S in stratum, missing subset)
};
ClosednessReport check_closedness(const DegenerationModel& D, const ThetaStratification& strat);

struct UniquenessReport {
  bool strict = true;
  std::vector<Support> offenders;
};
UniquenessReport check_uniqueness(const DegenerationModel& D, const ThetaStratification& strat);

std::string export_hasse(const ThetaStratification& strat, const ClosednessReport& closed);

}  // namespace instab
