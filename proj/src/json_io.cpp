#include "instab/json_io.hpp"

#include <sstream>

namespace instab {

Json rat_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return rat(j.get<long>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  throw Error("BadRational", "expected integer or \"p/q\" string");
}

namespace {

ZVec zvec_from_json(const Json& j) {
  ZVec v;
  for (const auto& x : j) {
    if (x.is_number_integer())
      v.push_back(Int(x.get<long>()));
    else if (x.is_string())
      v.push_back(Int(x.get<std::string>()));
    else
      throw Error("BadRational", "expected integer entry");
  }
  return v;
}

Json zvec_json(const ZVec& v) {
  Json j = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p())
      j.push_back(x.get_si());
    else
      j.push_back(x.get_str());
  }
  return j;
}

QVec qvec_from_json(const Json& j) {
  QVec v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

}  // namespace

Json cone_json(const RationalCone& c) {
  Json j;
  j["dim"] = c.ambient_dim();
  j["generators"] = Json::array();
  for (const auto& g : c.generators()) j["generators"].push_back(zvec_json(g.coords));
  return j;
}

RationalCone cone_from_json(const Json& j) {
  int dim = j.at("dim").get<int>();
  ZMat gens;
  for (const auto& g : j.at("generators")) gens.push_back(zvec_from_json(g));
  return RationalCone::from_generators(dim, gens);
}

Json fan_json(const Fan& f) {
  Json j;
  j["dim"] = f.ambient_dim;
  j["cones"] = Json::array();
  for (const auto& c : f.cones) j["cones"].push_back(cone_json(c));
  return j;
}

Fan fan_from_json(const Json& j) {
  Fan f;
  f.ambient_dim = j.at("dim").get<int>();
  for (const auto& c : j.at("cones")) f.cones.push_back(cone_from_json(c));
  return f;
}

Json formal_fan_json(const FormalFan& f) {
  Fan fan;
  fan.ambient_dim = f.ambient_dim;
  fan.cones = f.pieces;
  Json j = fan_json(fan);
  j["classical"] = f.classical_fan_certified;
  return j;
}

FormalFan formal_fan_from_json(const Json& j) {
  Fan fan = fan_from_json(j);
  FormalFan f = formal_fan(fan.ambient_dim, fan.cones);
  f.classical_fan_certified = j.value("classical", false);
  return f;
}

Json model_json(const DegenerationModel& d) {
  Json j;
  j["weights"] = Json::array();
  for (const auto& row : d.weights) j["weights"].push_back(zvec_json(row));
  if (d.excluded_supports.empty()) {
    j["excluded_supports"] = "none";
  } else {
    j["excluded_supports"] = Json::array();
    for (const auto& s : d.excluded_supports) j["excluded_supports"].push_back(s);
  }
  return j;
}

DegenerationModel model_from_json(const Json& j) {
  DegenerationModel d;
  for (const auto& row : j.at("weights")) d.weights.push_back(zvec_from_json(row));
  const auto& ex = j.at("excluded_supports");
  if (!(ex.is_string() && ex.get<std::string>() == "none")) {
    for (const auto& s : ex) {
      Support sup;
      for (const auto& i : s) sup.insert(i.get<int>());
      d.excluded_supports.push_back(sup);
    }
  }
  return d;
}

Json pl_class_json(const PLClass& l) {
  Json j;
  j["fan"] = fan_json(l.fan);
  j["linear"] = Json::array();
  for (const auto& v : l.per_cone) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(rat_json(x));
    j["linear"].push_back(row);
  }
  return j;
}

PLClass pl_class_from_json(const Json& j) {
  PLClass l;
  l.fan = fan_from_json(j.at("fan"));
  for (const auto& row : j.at("linear")) l.per_cone.push_back(qvec_from_json(row));
  return l;
}

Json pq_class_json(const PQClass& b) {
  Json j;
  j["fan"] = fan_json(b.fan);
  j["quadratic"] = Json::array();
  for (const auto& m : b.per_cone) {
    Json mat = Json::array();
    for (const auto& row : m) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(rat_json(x));
      mat.push_back(r);
    }
    j["quadratic"].push_back(mat);
  }
  return j;
}

PQClass pq_class_from_json(const Json& j) {
  PQClass b;
  b.fan = fan_from_json(j.at("fan"));
  for (const auto& mat : j.at("quadratic")) {
    QMat m;
    for (const auto& row : mat) m.push_back(qvec_from_json(row));
    b.per_cone.push_back(m);
  }
  return b;
}

SubobjectLattice lattice_from_json(const Json& j) {
  std::vector<std::string> names;
  for (const auto& e : j.at("elements")) names.push_back(e.get<std::string>());
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : j.at("leq")) pairs.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
  std::map<std::string, QC> Z;
  if (j.contains("Z"))
    for (const auto& [name, val] : j.at("Z").items())
      Z[name] = QC(rat_from_json(val.at(0)), rat_from_json(val.at(1)));
  return make_lattice(std::move(names), pairs, Z);
}

Json mu_json(const MuValue& v) {
  Json j;
  j["L"] = rat_json(v.L);
  j["B"] = rat_json(v.B);
  j["sign"] = v.sign;
  j["infinite"] = v.infinite;
  j["float"] = v.float_view();
  return j;
}

Json destab_json(const DestabResult& r) {
  Json j;
  j["status"] =
      r.status == DestabResult::Status::Unstable ? "Unstable" : "SemistableNonPositive";
  if (r.status == DestabResult::Status::Unstable) {
    j["mu"] = mu_json(r.value);
    j["argmax_rays"] = Json::array();
    for (const auto& ray : r.argmax_rays) j["argmax_rays"].push_back(zvec_json(ray.coords));
    j["unique"] = r.unique;
  }
  return j;
}

Json stratification_json(const ThetaStratification& s, const ClosednessReport& closed,
                         const UniquenessReport& uniq) {
  Json j;
  j["strata"] = Json::array();
  for (const auto& st : s.strata) {
    Json e;
    e["mu"] = Json{{"L", rat_json(st.mu.L)}, {"B", rat_json(st.mu.B)}};
    e["ray"] = zvec_json(st.ray.coords);
    e["limit"] = st.limit_support;
    e["members"] = Json::array();
    for (const auto& m : st.members) e["members"].push_back(m);
    j["strata"].push_back(e);
  }
  j["semistable"] = Json::array();
  for (const auto& m : s.semistable) j["semistable"].push_back(m);
  j["closed"] = closed.closed;
  if (closed.witness)
    j["witness"] = Json::array({Json(closed.witness->first), Json(closed.witness->second)});
  j["uniqueness"] = uniq.strict ? "strict" : "weak";
  return j;
}

Json hn_json(const SubobjectLattice& L, const HNResult& r, const ContainmentReport& cont) {
  Json j;
  j["chain"] = Json::array();
  for (int e : r.chain) j["chain"].push_back(L.names[e]);
  j["pieces"] = Json::array();
  for (const auto& z : r.pieces)
    j["pieces"].push_back(Json::array({rat_json(z.re), rat_json(z.im)}));
  j["weights"] = Json::array();
  for (const auto& w : r.weights) j["weights"].push_back(rat_json(w));
  j["mu"] = mu_json(r.mu);
  j["semistable"] = r.semistable;
  j["containment"] = cont.ok;
  if (cont.witness) j["containment_witness"] = L.names[*cont.witness];
  return j;
}

std::vector<FutakiSample> futaki_samples_from_csv(const std::string& text) {
  std::vector<FutakiSample> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<Rat> cells;
    try {
      while (std::getline(ls, cell, ',')) cells.push_back(parse_rat(cell));
    } catch (const Error&) {
      if (out.empty()) continue;  // header row
      throw;
    }
    if (cells.size() != 4) throw Error("BadRational", "expected rows n,dim,wsum,wsqsum");
    out.push_back({cells[0], cells[1], cells[2], cells[3]});
  }
  return out;
}

std::string polygon_csv(const Polygon& P) {
  std::ostringstream os;
  os << "x,h\n";
  for (const auto& [x, h] : polygon_breakpoints(P)) os << rat_str(x) << "," << rat_str(h) << "\n";
  return os.str();
}

}  // namespace instab
