#pragma once

#include <map>
#include <optional>
#include <string>

#include "instab/invariants.hpp"

namespace instab {

// Complex rational: value of a central charge.
struct QC {
  Rat re, im;
  QC() : re(0), im(0) {}
  QC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  QC operator+(const QC& o) const { return {re + o.re, im + o.im}; }
  QC operator-(const QC& o) const { return {re - o.re, im - o.im}; }
  bool operator==(const QC& o) const { return re == o.re && im == o.im; }
};

// Exact total order matching the phase in (0,1]; torsion (z real <= 0, or 0)
// sorts above everything in the open upper half-plane.
struct PhaseKey {
  int stage = 0;  // 0 = upper half-plane, 1 = torsion
  Rat slope;      // -re/im for stage 0
};
PhaseKey phase(const QC& z);  // throws OutOfRange outside H u R_{<=0}
int compare_phase(const PhaseKey& a, const PhaseKey& b);

struct SubobjectLattice {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq;  // reflexive-transitive
  std::vector<QC> Z;
  int bottom = -1, top = -1;

  int size() const { return static_cast<int>(names.size()); }
  bool less(int a, int b) const { return a != b && leq[a][b]; }
  int meet(int a, int b) const;  // -1 when absent
  int join(int a, int b) const;
  int index_of(const std::string& name) const;
};

SubobjectLattice make_lattice(std::vector<std::string> names,
                              const std::vector<std::pair<std::string, std::string>>& leq_pairs,
                              const std::map<std::string, QC>& Z);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};
ValidationReport validate_lattice(const SubobjectLattice& L);

int max_torsion(const SubobjectLattice& L);  // element index
bool is_semistable(const SubobjectLattice& L);

// --- rank-degree-weight calculus ---

struct RdwEntry {
  Rat r, d, w;
};
using RankDegreeWeightSeq = std::vector<RdwEntry>;

MuValue mu_rdw(const RankDegreeWeightSeq& a, const Rat& R, const Rat& D);

struct DeleteResult {
  RankDegreeWeightSeq seq;
  Rat dL, dB;
};
DeleteResult delete_step(const RankDegreeWeightSeq& a, int k);  // k is 1-based

struct RdPiece {
  Rat r, d;
};

std::pair<QVec, MuValue> optimal_weights(const std::vector<RdPiece>& pieces);
std::pair<QVec, MuValue> pava_max(const std::vector<RdPiece>& pieces);

// --- HN polygon ---

struct Polygon {
  std::vector<RdPiece> pieces;  // sorted by strictly decreasing slope traversal
  Rat R, D;
};

Polygon pol(std::vector<RdPiece> pieces);
Rat h_function(const Polygon& P, const Rat& x);
std::vector<std::pair<Rat, Rat>> polygon_breakpoints(const Polygon& P);
Rat integral_h_prime_sq(const Polygon& P);
bool polygon_leq(const Polygon& P1, const Polygon& P2);

// --- HN filtration ---

struct HNResult {
  std::vector<int> chain;   // ascending, bottom first, top last
  std::vector<QC> pieces;   // graded classes in phase-increasing order
  QVec weights;             // one per piece, same order
  MuValue mu;
  bool semistable = false;
  bool unique = true;
};

HNResult hn_filtration(const SubobjectLattice& L);
HNResult brute_force_max(const SubobjectLattice& L, int size_bound = 20);

struct ContainmentReport {
  bool ok = true;
  std::optional<int> witness;  // element whose charge escapes the polygon
};
ContainmentReport check_containment(const SubobjectLattice& L);

// --- Rees construction on filtered vector spaces ---

struct ReesReport {
  bool ok = true;
  std::vector<std::string> issues;
  std::vector<std::pair<long, long>> dim_table;  // (weight, dim), p' = 1
  std::vector<long> gr_dims;                     // fiber-at-zero graded dims
  bool t_injective = true;
  bool colim_ok = true;
  std::map<std::pair<long, long>, long> dim_table2;  // p' = 2
  bool shortened_match_1 = true, shortened_match_2 = true;
};

// subspaces: row-span matrices of E_1 .. E_p inside E = Q^n; weights has
// p+1 strictly increasing entries (one per E_0 .. E_p). multi_degree 2
// requires p = 2 and uses the canonical weight pattern.
ReesReport rees_module(int n, const std::vector<QMat>& subspaces, const std::vector<long>& weights,
                       int multi_degree);

}  // namespace instab
