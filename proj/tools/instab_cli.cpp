#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "instab/building.hpp"
#include "instab/json_io.hpp"
#include "instab/kempf.hpp"

namespace {

using namespace instab;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("BadInput", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load_json(const std::string& path) { return Json::parse(slurp(path)); }

QVec parse_qvec(const std::string& s) {
  QVec out;
  std::istringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_rat(cell));
  return out;
}

ZMat parse_zmat(const std::string& s) {
  ZMat out;
  std::istringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) {
    ZVec r;
    std::istringstream rs(row);
    std::string cell;
    while (std::getline(rs, cell, ',')) r.push_back(Int(cell));
    out.push_back(r);
  }
  return out;
}

QMat parse_form(const std::string& spec, size_t dim) {
  if (spec == "identity") {
    QMat B(dim, QVec(dim, 0));
    for (size_t i = 0; i < dim; ++i) B[i][i] = 1;
    return B;
  }
  Json j = load_json(spec);
  QMat B;
  for (const auto& row : j) {
    QVec r;
    for (const auto& c : row) r.push_back(rat_from_json(c));
    B.push_back(r);
  }
  return B;
}

std::string mu_sq_str(const MuValue& v) {
  if (v.infinite) return "inf";
  if (v.B == 0) return "0";
  Rat m2 = v.L * v.L / v.B;
  return rat_str(m2);
}

std::string ray_str(const Ray& r) {
  std::string out = "(";
  for (size_t i = 0; i < r.coords.size(); ++i) {
    if (i) out += ",";
    out += r.coords[i].get_str();
  }
  return out + ")";
}

int cmd_fan_check(const std::string& fan_path, bool json_out) {
  FormalFan F = formal_fan_from_json(load_json(fan_path));
  bool ok = is_classical_fan(F.pieces);
  if (json_out) {
    Json j = formal_fan_json(F);
    j["classical"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "classical fan: " << (ok ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_fan_deg(const std::string& fan_path, const std::string& pi_spec, bool json_out) {
  Json j = load_json(fan_path);
  Fan sigma = fan_from_json(j);
  ZMat pi;
  if (pi_spec.empty()) {
    pi.assign(sigma.ambient_dim, ZVec(sigma.ambient_dim, 0));
    for (int i = 0; i < sigma.ambient_dim; ++i) pi[i][i] = 1;
  } else {
    pi = parse_zmat(pi_spec);
  }
  FormalFan F = toric_degeneration_fan(sigma, pi);
  if (json_out) {
    std::cout << formal_fan_json(F).dump(2) << "\n";
  } else {
    std::cout << "pieces: " << F.pieces.size()
              << ", classical: " << (F.classical_fan_certified ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_kempf(const std::string& fan_path, const std::string& l_spec, const std::string& b_spec,
              bool json_out) {
  FormalFan F = formal_fan_from_json(load_json(fan_path));
  QVec l = parse_qvec(l_spec);
  QMat B = parse_form(b_spec, l.size());
  DestabResult r = maximize_on_fan(l, B, F);
  if (json_out) {
    std::cout << destab_json(r).dump(2) << "\n";
    return 0;
  }
  if (r.status == DestabResult::Status::SemistableNonPositive) {
    std::cout << "semistable (mu <= 0)\n";
  } else {
    std::cout << "ray " << ray_str(r.argmax_rays.at(0)) << ", mu^2 = " << mu_sq_str(r.value)
              << "\n";
  }
  return 0;
}

int cmd_stratify(const std::string& model_path, const std::string& l_spec,
                 const std::string& b_spec, int max_size, bool json_out, bool dot_out) {
  DegenerationModel D = model_from_json(load_json(model_path));
  size_t n = D.weights.empty() ? 0 : D.weights[0].size();
  QVec l = l_spec.empty() ? QVec(n, 0) : parse_qvec(l_spec);
  QMat B = parse_form(b_spec, l.size());
  ThetaStratification S = build_stratification(D, l, B, max_size);
  ClosednessReport closed = check_closedness(D, S);
  UniquenessReport uniq = check_uniqueness(D, S);
  if (dot_out) {
    std::cout << export_hasse(S, closed);
    return 0;
  }
  if (json_out) {
    std::cout << stratification_json(S, closed, uniq).dump(2) << "\n";
    return 0;
  }
  std::cout << "strata: " << S.strata.size() << ", semistable supports: " << S.semistable.size()
            << ", closed: " << (closed.closed ? "true" : "false")
            << ", uniqueness: " << (uniq.strict ? "strict" : "weak") << "\n";
  return 0;
}

int cmd_hn_run(const std::string& lattice_path, bool json_out) {
  SubobjectLattice L = lattice_from_json(load_json(lattice_path));
  HNResult r = hn_filtration(L);
  ContainmentReport cont = check_containment(L);
  if (json_out) {
    std::cout << hn_json(L, r, cont).dump(2) << "\n";
    return 0;
  }
  std::cout << "chain:";
  for (int i : r.chain) std::cout << " " << L.names[i];
  std::cout << "\nmu^2 = " << mu_sq_str(r.mu)
            << ", semistable: " << (r.semistable ? "true" : "false")
            << ", contained: " << (cont.ok ? "true" : "false") << "\n";
  return 0;
}

int cmd_hn_polygon(const std::string& pieces_spec, bool csv_out) {
  std::vector<RdPiece> pieces;
  for (const auto& row : parse_zmat(pieces_spec)) {
    if (row.size() != 2) throw Error("BadInput", "pieces must be r,d pairs");
    pieces.push_back({Rat(row[0]), Rat(row[1])});
  }
  Polygon P = pol(pieces);
  if (csv_out) {
    std::cout << polygon_csv(P);
    return 0;
  }
  std::cout << "breakpoints:";
  for (const auto& [x, h] : polygon_breakpoints(P))
    std::cout << " (" << rat_str(x) << "," << rat_str(h) << ")";
  std::cout << "\n";
  return 0;
}

int cmd_building(int n, int q, long max_size, bool json_out, bool dot_out, bool off_out) {
  FlagComplex C = building_complex(n, q, max_size);
  BuildingStats st = building_stats(C);
  if (dot_out) {
    std::cout << export_dot(C);
    return 0;
  }
  if (off_out) {
    std::cout << export_off(C);
    return 0;
  }
  if (json_out) {
    Json j;
    j["n"] = n;
    j["q"] = q;
    Json fv = Json::array();
    for (const auto& f : st.f_vector) fv.push_back(f.get_str());
    j["f_vector"] = fv;
    j["euler_characteristic"] = st.euler_characteristic.get_str();
    j["pure"] = st.pure;
    j["chambers"] = st.chambers.get_str();
    j["flag_count"] = st.flag_count.get_str();
    Json cc = Json::array();
    for (const auto& c : st.color_class_sizes) cc.push_back(c.get_str());
    j["color_class_sizes"] = cc;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "f-vector:";
  for (size_t i = 0; i < st.f_vector.size(); ++i)
    std::cout << (i ? ", " : " ") << st.f_vector[i].get_str();
  std::cout << "\neuler characteristic: " << st.euler_characteristic.get_str()
            << "\npure: " << (st.pure ? "true" : "false")
            << "\nchambers: " << st.chambers.get_str()
            << " (flag count: " << st.flag_count.get_str() << ")\n";
  return 0;
}

int cmd_futaki(const std::string& samples_path, long r, bool json_out) {
  auto samples = futaki_samples_from_csv(slurp(samples_path));
  TautCoeffs c = futaki_fit(samples, r);
  auto [l, b] = futaki_classes(c);
  NormalizedFutaki nf = normalized_futaki(c);
  if (json_out) {
    Json j;
    j["r"] = c.r;
    j["a0"] = rat_json(c.a0);
    j["a1"] = rat_json(c.a1);
    j["d0"] = rat_json(c.d0);
    j["d1"] = rat_json(c.d1);
    j["q0"] = rat_json(c.q0);
    j["q1"] = rat_json(c.q1);
    j["l"] = rat_json(l);
    j["b"] = rat_json(b);
    j["normalized_d1"] = rat_json(nf.d1t);
    j["normalized_q0"] = rat_json(nf.q0t);
    j["normalized"] = nf.value;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "coefficients: a = (" << rat_str(c.a0) << ", " << rat_str(c.a1) << "), d = ("
            << rat_str(c.d0) << ", " << rat_str(c.d1) << "), q = (" << rat_str(c.q0) << ", "
            << rat_str(c.q1) << ")\n";
  std::cout << "l = " << rat_str(l) << ", b = " << rat_str(b) << "\n";
  std::cout << "normalized invariant = " << nf.value << " (-(" << rat_str(nf.d1t) << ")/sqrt("
            << rat_str(nf.q0t) << "))\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact instability calculator: cones, stratifications, filtrations, buildings"};
  app.require_subcommand(1);

  bool json_out = false, dot_out = false, csv_out = false, off_out = false;
  long seed = 12345;
  int max_dim = 8;
  long max_size = 1 << 16;
  app.add_flag("--json", json_out, "emit JSON");
  app.add_flag("--dot", dot_out, "emit DOT graph");
  app.add_flag("--csv", csv_out, "emit CSV");
  app.add_option("--seed", seed, "seed for randomized checks");
  app.add_option("--max-dim", max_dim, "dimension bound");
  app.add_option("--max-size", max_size, "enumeration bound");

  auto* fan = app.add_subcommand("fan", "fan checks and toric degeneration fans");
  fan->require_subcommand(1);
  std::string fan_path, pi_spec;
  auto* fan_check = fan->add_subcommand("check", "test whether the pieces form a classical fan");
  fan_check->add_option("--fan", fan_path, "formal fan JSON")->required();
  auto* fan_deg = fan->add_subcommand("deg", "degeneration fan of a toric variety");
  bool toric = false;
  fan_deg->add_flag("--toric", toric, "toric model (required)");
  fan_deg->add_option("--fan", fan_path, "classical fan JSON")->required();
  fan_deg->add_option("--pi", pi_spec, "projection matrix rows 'a,b;c,d' (default identity)");

  auto* kempf = app.add_subcommand("kempf", "exact mu maximization");
  auto* kempf_solve = kempf->add_subcommand("solve", "maximize l/sqrt(b) over a fan");
  std::string l_spec, b_spec = "identity";
  kempf_solve->add_option("--fan", fan_path, "formal fan JSON")->required();
  kempf_solve->add_option("--l", l_spec, "linear functional '1,2'")->required();
  kempf_solve->add_option("--b", b_spec, "'identity' or JSON matrix file");

  auto* strat = app.add_subcommand("stratify", "instability stratification of a torus model");
  std::string model_path;
  strat->add_option("--model", model_path, "weight-model JSON")->required();
  strat->add_option("--l", l_spec, "linear functional (default 0)");
  strat->add_option("--b", b_spec, "'identity' or JSON matrix file");

  auto* hn = app.add_subcommand("hn", "filtration calculus");
  hn->require_subcommand(1);
  std::string lattice_path, pieces_spec;
  auto* hn_run = hn->add_subcommand("run", "maximal filtration of a subobject lattice");
  hn_run->add_option("--lattice", lattice_path, "lattice JSON")->required();
  auto* hn_poly = hn->add_subcommand("polygon", "concave polygon of rank-degree pieces");
  hn_poly->add_option("--pieces", pieces_spec, "pieces 'r,d;r,d;...'")->required();

  auto* bld = app.add_subcommand("building", "flag complex of subspaces over a prime field");
  int bn = 0, bq = 0;
  bool off_flag = false;
  bld->add_option("--n", bn, "ambient dimension")->required();
  bld->add_option("--q", bq, "field order (prime)")->required();
  bld->add_flag("--off", off_flag, "emit OFF geometry");

  auto* fut = app.add_subcommand("futaki", "tautological-class calculus from sample data");
  std::string samples_path;
  long fr = 1;
  fut->add_option("--samples", samples_path, "CSV with rows n,dim,wsum,wsqsum")->required();
  fut->add_option("--r", fr, "fiber dimension r");

  for (auto* sub : {fan, fan_check, fan_deg, kempf, kempf_solve, strat, hn, hn_run, hn_poly, bld,
                    fut})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  off_out = off_out || off_flag;
  try {
    if (fan_check->parsed()) return cmd_fan_check(fan_path, json_out);
    if (fan_deg->parsed()) {
      if (!toric) throw Error("BadInput", "only --toric degeneration fans are supported");
      return cmd_fan_deg(fan_path, pi_spec, json_out);
    }
    if (kempf_solve->parsed()) return cmd_kempf(fan_path, l_spec, b_spec, json_out);
    if (strat->parsed())
      return cmd_stratify(model_path, l_spec, b_spec,
                          static_cast<int>(std::min<long>(max_size, 24)), json_out, dot_out);
    if (hn_run->parsed()) return cmd_hn_run(lattice_path, json_out);
    if (hn_poly->parsed()) return cmd_hn_polygon(pieces_spec, csv_out || !json_out);
    if (bld->parsed()) return cmd_building(bn, bq, max_size, json_out, dot_out, off_out);
    if (fut->parsed()) return cmd_futaki(samples_path, fr, json_out);
  } catch (const Error& e) {
    std::cerr << "error [" << e.code << "]: " << e.what() << "\n";
    return e.code == "TooLarge" ? 3 : 2;
  } catch (const Json::exception& e) {
    std::cerr << "error [BadJson]: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
