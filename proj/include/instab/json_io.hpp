#pragma once

#include <string>

#include "instab/formalfan.hpp"
#include "instab/hn.hpp"
#include "instab/invariants.hpp"
#include "instab/stratify.hpp"

#include "json.hpp"

namespace instab {

using Json = nlohmann::json;

// Rationals travel as strings "p/q" (or "p") in every schema.
Json rat_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json cone_json(const RationalCone& c);
RationalCone cone_from_json(const Json& j);

Json fan_json(const Fan& f);
Fan fan_from_json(const Json& j);

Json formal_fan_json(const FormalFan& f);
FormalFan formal_fan_from_json(const Json& j);

Json model_json(const DegenerationModel& d);
DegenerationModel model_from_json(const Json& j);

Json pl_class_json(const PLClass& l);
PLClass pl_class_from_json(const Json& j);
Json pq_class_json(const PQClass& b);
PQClass pq_class_from_json(const Json& j);

SubobjectLattice lattice_from_json(const Json& j);

Json mu_json(const MuValue& v);
Json destab_json(const DestabResult& r);
Json stratification_json(const ThetaStratification& s, const ClosednessReport& closed,
                         const UniquenessReport& uniq);
Json hn_json(const SubobjectLattice& L, const HNResult& r, const ContainmentReport& cont);

std::vector<FutakiSample> futaki_samples_from_csv(const std::string& text);
std::string polygon_csv(const Polygon& P);

}  // namespace instab
