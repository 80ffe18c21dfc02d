#include "instab/stratify.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace instab {

Support limit_support(const DegenerationModel& D, const Support& S, const ZVec& lambda) {
  Support out;
  for (int i : S)
    if (dot(D.weights[i - 1], lambda) == 0) out.insert(i);
  return out;
}

namespace {

std::vector<Support> subsets_of(const Support& S) {
  std::vector<int> idx(S.begin(), S.end());
  std::vector<Support> out;
  for (size_t mask = 0; mask < (size_t{1} << idx.size()); ++mask) {
    Support sub;
    for (size_t a = 0; a < idx.size(); ++a)
      if (mask & (size_t{1} << a)) sub.insert(idx[a]);
    out.push_back(sub);
  }
  return out;
}

}  // namespace

DestabResult best_destabilizer(const DegenerationModel& D, const Support& S, const QVec& l,
                               const QMat& B) {
  if (!D.allows(S)) throw Error("OutOfRange", "support is excluded by the model");
  DestabResult acc;
  auto consider = [&](const RationalCone& cone) {
    FormalFan F = formal_fan(D.k(), {cone});
    DestabResult r = maximize_on_fan(l, B, F);
    if (r.status != DestabResult::Status::Unstable) return;
    for (size_t a = 0; a < r.argmax_rays.size(); ++a) {
      const Ray& ray = r.argmax_rays[a];
      if (!D.allows(limit_support(D, S, ray.coords))) continue;
      if (acc.status == DestabResult::Status::SemistableNonPositive ||
          compare_mu(r.value, acc.value) > 0) {
        acc.status = DestabResult::Status::Unstable;
        acc.value = r.value;
        acc.argmax_rays = {ray};
        acc.cone_indices = {0};
      } else if (compare_mu(r.value, acc.value) == 0 &&
                 std::find(acc.argmax_rays.begin(), acc.argmax_rays.end(), ray) ==
                     acc.argmax_rays.end()) {
        acc.argmax_rays.push_back(ray);
        acc.cone_indices.push_back(0);
      }
    }
  };
  if (D.excluded_supports.empty()) {
    consider(admissible_cone(D, S));
  } else {
    // Candidates are filtered by the limit support of their attracting ray, so
    // enumerate the allowed limit patterns T and maximize over each region
    // {A_i.lambda = 0 on T, A_i.lambda >= 0 on S minus T}.
    for (const auto& T : subsets_of(S)) {
      if (!D.allows(T)) continue;
      ZMat eqs, ineqs;
      for (int i : S) {
        if (T.count(i))
          eqs.push_back(D.weights[i - 1]);
        else
          ineqs.push_back(D.weights[i - 1]);
      }
      consider(RationalCone::from_inequalities(D.k(), eqs, ineqs));
    }
  }
  acc.unique = acc.status == DestabResult::Status::Unstable && acc.argmax_rays.size() == 1;
  return acc;
}

ThetaStratification build_stratification(const DegenerationModel& D, const QVec& l, const QMat& B,
                                         int max_n) {
  if (D.n() > max_n) throw Error("TooLarge", "too many coordinates for support enumeration");
  ThetaStratification out;
  // Group key: (mu key, argmax ray, limit support).
  using Key = std::tuple<int, Rat, ZVec, std::vector<int>>;
  std::map<Key, Stratum> groups;
  Support full;
  for (int i = 1; i <= D.n(); ++i) full.insert(i);
  for (const auto& S : subsets_of(full)) {
    if (!D.allows(S)) continue;
    DestabResult r = best_destabilizer(D, S, l, B);
    if (r.status != DestabResult::Status::Unstable) {
      out.semistable.push_back(S);
      continue;
    }
    if (!r.unique) out.nonunique.push_back(S);
    Ray label = *std::min_element(r.argmax_rays.begin(), r.argmax_rays.end());
    Support lim = limit_support(D, S, label.coords);
    auto mk = mu_key(r.value);
    Key key{mk.first, mk.second, label.coords, std::vector<int>(lim.begin(), lim.end())};
    auto it = groups.find(key);
    if (it == groups.end()) {
      Stratum s;
      s.mu = r.value;
      s.ray = label;
      s.limit_support = lim;
      s.members = {S};
      groups.emplace(key, std::move(s));
    } else {
      it->second.members.push_back(S);
    }
  }
  for (auto& [key, s] : groups) out.strata.push_back(std::move(s));
  std::stable_sort(out.strata.begin(), out.strata.end(), [](const Stratum& a, const Stratum& b) {
    int c = compare_mu(a.mu, b.mu);
    if (c != 0) return c > 0;  // decreasing mu
    if (a.ray.coords != b.ray.coords) return a.ray.coords < b.ray.coords;
    return a.limit_support < b.limit_support;
  });
  return out;
}

ClosednessReport check_closedness(const DegenerationModel& D, const ThetaStratification& strat) {
  ClosednessReport rep;
  std::set<Support> above;
  for (size_t i = 0; i < strat.strata.size(); ++i) {
    for (const auto& S : strat.strata[i].members) above.insert(S);
    // Levels with equal mu form one closed union; only check at level breaks.
    if (i + 1 < strat.strata.size() && compare_mu(strat.strata[i].mu, strat.strata[i + 1].mu) == 0)
      continue;
    for (const auto& S : above)
      for (const auto& sub : subsets_of(S)) {
        if (!D.allows(sub) || above.count(sub)) continue;
        rep.closed = false;
        rep.witness = {S, sub};
        return rep;
      }
  }
  return rep;
}

UniquenessReport check_uniqueness(const DegenerationModel& D, const ThetaStratification& strat) {
  (void)D;
  UniquenessReport rep;
  rep.offenders = strat.nonunique;
  rep.strict = rep.offenders.empty();
  return rep;
}

namespace {

std::string support_str(const Support& S) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i : S) {
    if (!first) os << ",";
    os << i;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace

std::string export_hasse(const ThetaStratification& strat, const ClosednessReport& closed) {
  std::ostringstream os;
  os << "digraph strata {\n";
  for (size_t i = 0; i < strat.strata.size(); ++i) {
    const auto& s = strat.strata[i];
    os << "  s" << i << " [label=\"mu=" << s.mu.float_view() << " ray=" << vec_str(s.ray.coords)
       << " members=";
    for (const auto& m : s.members) os << support_str(m);
    os << "\"];\n";
  }
  os << "  ss [label=\"semistable:";
  for (const auto& m : strat.semistable) os << " " << support_str(m);
  os << "\"];\n";
  for (size_t i = 0; i + 1 < strat.strata.size(); ++i)
    os << "  s" << i << " -> s" << i + 1 << ";\n";
  if (!strat.strata.empty()) os << "  s" << strat.strata.size() - 1 << " -> ss;\n";
  if (!closed.closed && closed.witness)
    os << "  ss -> s0 [style=dashed, label=\"closure violation " << support_str(closed.witness->first)
       << " ~> " << support_str(closed.witness->second) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace instab
