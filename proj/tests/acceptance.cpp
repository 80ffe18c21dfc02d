// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
#include <algorithm>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "instab/building.hpp"
#include "instab/hn.hpp"
#include "instab/kempf.hpp"
#include "instab/stratify.hpp"

using namespace instab;

namespace {

std::mt19937_64 rng(20260826);

long rnd(long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return d(rng);
}

QMat identity_q(int n) {
  QMat m(n, QVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// --- 1: solver dominance over barycentric grids with denominators <= 12 ---

bool criterion1(std::string& msg) {
  for (int inst = 0; inst < 50; ++inst) {
    int d = static_cast<int>(rnd(2, 4));
    ZMat gens;
    while (true) {
      gens.clear();
      for (int g = 0; g < d; ++g) {
        ZVec v(d);
        for (auto& x : v) x = rnd(-3, 3);
        gens.push_back(v);
      }
      if (rank(gens) == d) break;
    }
    RationalCone C = RationalCone::from_generators(d, gens);
    QVec l(d);
    for (auto& x : l) x = rat(rnd(-10, 10), rnd(1, 2));
    QMat M(d, QVec(d));
    for (auto& row : M)
      for (auto& x : row) x = rat(rnd(-2, 2));
    QMat B = identity_q(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) B[i][j] += M[k][i] * M[k][j];

    DestabResult r = maximize_on_fan(l, B, formal_fan(d, {C}));
    MuValue best = r.status == DestabResult::Status::Unstable ? r.value : mu_value(0, 1);

    int m = static_cast<int>(C.generators().size());
    std::vector<long> lam(m, 0);
    while (true) {
      int i = 0;
      for (; i < m; ++i) {
        if (lam[i] < 12) {
          ++lam[i];
          break;
        }
        lam[i] = 0;
      }
      if (i == m) break;
      QVec x(d, 0);
      for (int g = 0; g < m; ++g)
        for (int j = 0; j < d; ++j) x[j] += rat(lam[g]) * Rat(C.generators()[g].coords[j]);
      Rat Bv = eval_form(B, x, x);
      if (Bv == 0) continue;
      MuValue v = mu_value(dot(l, x), Bv);
      if (compare_mu(v, best) > 0) {
        std::ostringstream ss;
        ss << "grid ray beats the solver on instance " << inst;
        msg = ss.str();
        return false;
      }
    }
    if (r.status == DestabResult::Status::Unstable && !r.unique) {
      msg = "non-unique argmax on a convex single-cone fan";
      return false;
    }
  }
  msg = "solver >= barycentric grid (den <= 12) on 50 instances, argmax unique";
  return true;
}

// --- shared random lattice generator for criterion 2 ---

QC qc(long re, long im) { return {rat(re), rat(im)}; }

SubobjectLattice boolean_lattice(const std::vector<QC>& zs) {
  int p = static_cast<int>(zs.size());
  std::vector<std::string> names;
  std::map<std::string, QC> Z;
  std::vector<std::pair<std::string, std::string>> leq;
  for (int mask = 0; mask < (1 << p); ++mask) {
    names.push_back("s" + std::to_string(mask));
    QC z{0, 0};
    for (int i = 0; i < p; ++i)
      if (mask & (1 << i)) z = z + zs[i];
    if (mask) Z[names.back()] = z;
    for (int i = 0; i < p; ++i)
      if (!(mask & (1 << i))) leq.push_back({names[mask], "s" + std::to_string(mask | (1 << i))});
  }
  return make_lattice(names, leq, Z);
}

SubobjectLattice random_lattice() {
  auto rand_qc = [&](bool allow_torsion) {
    long im = rnd(allow_torsion ? 0 : 1, 3);
    long re = rnd(-4, im == 0 ? -1 : 3);
    return qc(re, im);
  };
  if (rnd(0, 1) == 0) {
    std::vector<QC> zs;
    int p = static_cast<int>(rnd(1, 3));
    for (int i = 0; i < p; ++i) zs.push_back(rand_qc(true));
    return boolean_lattice(zs);
  }
  int len = static_cast<int>(rnd(1, 6));
  std::vector<std::string> names = {"0"};
  std::vector<std::pair<std::string, std::string>> leq;
  std::map<std::string, QC> Z;
  QC acc{0, 0};
  for (int i = 1; i <= len; ++i) {
    names.push_back("c" + std::to_string(i));
    leq.push_back({names[i - 1], names[i]});
    acc = acc + rand_qc(i == 1);
    Z[names[i]] = acc;
  }
  return make_lattice(names, leq, Z);
}

bool criterion2(std::string& msg) {
  for (int trial = 0; trial < 200; ++trial) {
    SubobjectLattice L = random_lattice();
    if (!validate_lattice(L).ok || L.size() > 12) {
      --trial;
      continue;
    }
    HNResult greedy = hn_filtration(L);
    HNResult brute = brute_force_max(L);
    if (greedy.chain != brute.chain || compare_mu(greedy.mu, brute.mu) != 0) {
      msg = "greedy and brute-force disagree";
      return false;
    }
    bool nonpos = compare_mu(brute.mu, mu_value(0, 1)) <= 0;
    if (is_semistable(L) != nonpos || greedy.semistable != nonpos) {
      msg = "semistability does not match the sign of the maximum";
      return false;
    }
  }
  msg = "greedy filtration == brute force (chain and mu) on 200 lattices";
  return true;
}

bool criterion3(std::string& msg) {
  long hits_del = 0, hits_ins = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    int p = static_cast<int>(rnd(2, 5));
    RankDegreeWeightSeq a;
    Rat w = rat(rnd(-12, 0), 3);
    Rat R = 0, D = 0;
    for (int j = 0; j < p; ++j) {
      Rat r = rat(rnd(1, 5)), d = rat(rnd(-5, 5));
      a.push_back({r, d, w});
      w += rat(rnd(1, 6), 3);
      R += r;
      D += d;
    }
    int k = static_cast<int>(rnd(1, p - 1));
    MuValue before = mu_rdw(a, R, D);
    DeleteResult del = delete_step(a, k);
    MuValue after = mu_rdw(del.seq, R, D);
    int sc = cmp(a[k - 1].d * a[k].r, a[k].d * a[k - 1].r);  // phase order of slopes
    if (sc >= 0 && compare_mu(before, mu_value(0, 1)) >= 0) {
      ++hits_del;
      if (compare_mu(after, before) < 0) {
        msg = "deletion decreased mu on a slope violator";
        return false;
      }
      if (compare_mu(after, before) == 0 && !(sc == 0 && before.L == 0)) {
        msg = "deletion equality outside the stated equality case";
        return false;
      }
    }
    if (sc < 0 && compare_mu(after, mu_value(0, 1)) >= 0) {
      ++hits_ins;
      // A small enough weight gap always makes the split strictly better.
      Rat wavg = del.seq[k - 1].w, gap = a[k].w - a[k - 1].w;
      Rat rs = a[k - 1].r + a[k].r;
      bool improved = false;
      for (int half = 0; half < 80 && !improved; ++half) {
        RankDegreeWeightSeq split = a;
        split[k - 1].w = wavg - gap * a[k].r / rs;
        split[k].w = wavg + gap * a[k - 1].r / rs;
        improved = compare_mu(mu_rdw(split, R, D), after) > 0;
        gap /= 2;
      }
      if (!improved) {
        msg = "no insertion with a small weight gap beat the merged sequence";
        return false;
      }
    }
  }
  std::ostringstream ss;
  ss << "both sign guarantees on 10^4 sequences (" << hits_del << " deletion / " << hits_ins
     << " insertion cases)";
  msg = ss.str();
  return true;
}

bool criterion4(std::string& msg) {
  for (int inst = 0; inst < 100; ++inst) {
    int p = inst < 80 ? 2 : 3;
    std::vector<RdPiece> pieces;
    Rat R = 0, D = 0, nu = rat(rnd(-3, -1));
    for (int j = 0; j < p; ++j) {
      Rat r = rat(rnd(1, 3));
      pieces.push_back({r, nu * r});
      R += r;
      D += nu * r;
      nu += rat(rnd(1, 3));
    }
    auto [w, best] = optimal_weights(pieces);

    // The closed form: (L/B)^2 * B = R^2 (sum nu_j^2 r_j - nubar^2 R).
    Rat nubar = D / R, s = 0;
    for (const auto& pc : pieces) s += (pc.d / pc.r) * (pc.d / pc.r) * pc.r;
    if (best.L * best.L != R * R * (s - nubar * nubar * R) * best.B) {
      msg = "closed-form identity L^2 = B R^2 (sum nu^2 r - nu^2 R) failed";
      return false;
    }

    // Exhaustive increasing grids in [-4,4] with denominator 8.
    std::vector<long> idx(p);
    auto weights_at = [&](const std::vector<long>& v) {
      RankDegreeWeightSeq seq;
      for (int j = 0; j < p; ++j) seq.push_back({pieces[j].r, pieces[j].d, rat(v[j], 8)});
      return seq;
    };
    bool ok = true;
    if (p == 2) {
      for (long a = -32; a <= 32 && ok; ++a)
        for (long b = a + 1; b <= 32; ++b)
          if (compare_mu(best, mu_rdw(weights_at({a, b}), R, D)) < 0) {
            ok = false;
            break;
          }
    } else {
      for (long a = -32; a <= 32 && ok; ++a)
        for (long b = a + 1; b <= 32 && ok; ++b)
          for (long c = b + 1; c <= 32; ++c)
            if (compare_mu(best, mu_rdw(weights_at({a, b, c}), R, D)) < 0) {
              ok = false;
              break;
            }
    }
    if (!ok) {
      msg = "a grid weight vector beat the closed form";
      return false;
    }
  }
  msg = "closed-form weights dominate all grid weights (den <= 8) on 100 lists";
  return true;
}

bool criterion5(std::string& msg) {
  int strict = 0, equal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int p = static_cast<int>(rnd(2, 4));
    std::vector<RdPiece> pieces;
    Rat nu = rat(rnd(-4, 0));
    for (int j = 0; j < p; ++j) {
      Rat r = rat(rnd(1, 3));
      pieces.push_back({r, nu * r});
      nu += rat(rnd(1, 4));
    }
    bool same = rnd(0, 4) == 0;
    std::vector<RdPiece> inner;
    if (same) {
      inner = pieces;
    } else {
      int k = static_cast<int>(rnd(0, p - 2));
      for (int j = 0; j < p; ++j)
        if (j == k) {
          inner.push_back({pieces[j].r + pieces[j + 1].r, pieces[j].d + pieces[j + 1].d});
          ++j;
        } else {
          inner.push_back(pieces[j]);
        }
    }
    Polygon big = pol(pieces), small = pol(inner);
    if (!polygon_leq(small, big)) {
      msg = "nesting violated by construction";
      return false;
    }
    Rat i1 = integral_h_prime_sq(small), i2 = integral_h_prime_sq(big);
    if (same) {
      ++equal;
      if (i1 != i2) {
        msg = "equal polygons with different integrals";
        return false;
      }
    } else {
      ++strict;
      if (i1 >= i2) {
        msg = "strict nesting without strict integral increase";
        return false;
      }
    }
  }
  std::ostringstream ss;
  ss << "integral of (h')^2 strictly monotone on " << strict << " strict / " << equal
     << " equal nested pairs";
  msg = ss.str();
  return true;
}

bool criterion6(std::string& msg) {
  DegenerationModel sign_model{{{Int(1)}, {Int(-1)}}, {}};
  ThetaStratification S = build_stratification(sign_model, {rat(1)}, {{rat(1)}});
  if (S.strata.size() != 1 || compare_mu(S.strata[0].mu, mu_value(1, 1)) != 0 ||
      S.strata[0].ray.coords != ZVec{Int(1)}) {
    msg = "weights-(1,-1) model did not give the single mu = 1 stratum with ray (1)";
    return false;
  }
  if (!check_closedness(sign_model, S).closed) {
    msg = "weights-(1,-1) stratification not closed";
    return false;
  }

  DegenerationModel bad = DegenerationModel::punctured({{Int(-1)}, {Int(0)}, {Int(1)}});
  ThetaStratification T = build_stratification(bad, {rat(-1)}, {{rat(1)}});
  ClosednessReport rep = check_closedness(bad, T);
  if (rep.closed || !rep.witness || rep.witness->first != Support{1, 2} ||
      rep.witness->second != Support{1}) {
    msg = "counterexample model did not fail with witness ({1,2},{1})";
    return false;
  }
  msg = "sign model closed; counterexample fails with witness ({1,2},{1})";
  return true;
}

bool criterion7(std::string& msg) {
  for (int n = 1; n <= 4; ++n) {
    ZMat id(n, ZVec(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    Fan an{n, {RationalCone::from_generators(n, id)}};
    FormalFan F = toric_degeneration_fan(an, id);
    if (!F.classical_fan_certified) {
      msg = "identity preimage fan not certified classical";
      return false;
    }
    // h_[n] extensionally: membership accepts exactly nonnegative injective
    // matrices whose columns lie in the orthant.
    for (int trial = 0; trial < 60; ++trial) {
      ZMat M(n, ZVec(n));
      for (auto& row : M)
        for (auto& x : row) x = rnd(-2, 2);
      bool expected = rank(M) == n;
      for (const auto& row : M)
        for (const auto& x : row) expected = expected && x >= 0;
      if (fan_cones(F, n, M) != expected) {
        msg = "membership in the degeneration fan of affine space is wrong";
        return false;
      }
    }
  }
  // Preimages of genuine fans under non-identity surjections stay classical.
  Fan p1{1, {RationalCone::from_generators(1, {{Int(1)}}), RationalCone::from_generators(1, {{Int(-1)}})}};
  FormalFan half = toric_degeneration_fan(p1, {{Int(1), Int(1)}});
  if (!half.classical_fan_certified) {
    msg = "preimage of the line fan under (1,1) not classical";
    return false;
  }
  msg = "degeneration fans of affine space are the orthant fans, all certified classical";
  return true;
}

bool criterion8(std::string& msg) {
  FlagComplex C = building_complex(3, 2);
  BuildingStats st = building_stats(C);
  if (st.f_vector != std::vector<Int>{14, 21} || !st.pure) {
    msg = "rank-2 building over F_2 is not pure with f = (14, 21)";
    return false;
  }
  if (st.chambers != st.flag_count || st.chambers != 21) {
    msg = "chamber count disagrees with the independent flag enumeration";
    return false;
  }
  for (int q : {2, 3, 5}) {
    FlagComplex B2 = building_complex(2, q);
    if (static_cast<long>(B2.vertices.size()) != q + 1) {
      msg = "rank-1 building vertex count is not q + 1";
      return false;
    }
  }
  msg = "f = (14, 21) with 21 = flag count; rank-1 buildings have q + 1 vertices";
  return true;
}

bool criterion9(std::string& msg) {
  std::vector<FutakiSample> samples;
  for (long n = 1; n <= 6; ++n) {
    Rat N = rat(n);
    samples.push_back({N, N + 1, N * (N + 1) / 2, N * (N + 1) * (2 * N + 1) / 6});
  }
  TautCoeffs c = futaki_fit(samples, 1);
  if (!(c.a0 == 1 && c.a1 == 1 && c.d0 == 1 && c.d1 == rat(1, 2) && c.q0 == 2 && c.q1 == 1)) {
    msg = "rotation dataset coefficients are not (1,1,1,1/2,2,1)";
    return false;
  }
  auto [l, b] = futaki_classes(c);
  if (l != rat(1, 2) || b != 1) {
    msg = "(l, b) != (1/2, 1) on the rotation dataset";
    return false;
  }
  for (int trial = 0; trial < 100; ++trial) {
    Rat m = rat(rnd(-40, 40), rnd(1, 8));
    auto [lt, bt] = futaki_classes(twist(c, m));
    if (lt != l || bt != b) {
      msg = "futaki classes not twist-invariant";
      return false;
    }
  }
  std::vector<FutakiSample> product;
  for (long n = 1; n <= 5; ++n) product.push_back({rat(n), rat(n + 1), 0, 0});
  TautCoeffs pc = futaki_fit(product, 1);
  auto [pl, pb] = futaki_classes(pc);
  if (pl != 0 || pb != 0 || normalized_futaki(pc).value != 0.0) {
    msg = "product configuration did not vanish";
    return false;
  }
  msg = "twist invariance on 100 random m; rotation and product datasets exact";
  return true;
}

bool criterion10(std::string& msg) {
  for (int trial = 0; trial < 50; ++trial) {
    int n = static_cast<int>(rnd(2, 6));
    int p = static_cast<int>(rnd(1, std::min(3, n - 1)));
    std::vector<int> dims;
    int cur = n;
    for (int j = 0; j < p && cur > 1; ++j) {
      cur = static_cast<int>(rnd(1, cur - 1));
      dims.push_back(cur);
    }
    p = static_cast<int>(dims.size());
    std::vector<QVec> rows;
    for (int i = 0; i < dims[0]; ++i) {
      QVec row(n, 0);
      row[i] = 1;
      for (int t = dims[0]; t < n; ++t) row[t] = rat(rnd(0, 2));
      rows.push_back(row);
    }
    std::vector<QMat> subs;
    for (int j = 0; j < p; ++j) subs.push_back(QMat(rows.begin(), rows.begin() + dims[j]));
    std::vector<long> weights = {0};
    for (int j = 0; j < p; ++j) weights.push_back(weights.back() + rnd(1, 3));
    ReesReport r = rees_module(n, subs, weights, 1);
    long total = 0;
    for (long g : r.gr_dims) total += g;
    if (!r.ok || !r.t_injective || !r.colim_ok || total != n) {
      msg = "single-degree Rees verification failed";
      return false;
    }
    if (p == 2) {
      ReesReport r2 = rees_module(n, subs, weights, 2);
      if (!r2.ok || !r2.shortened_match_1 || !r2.shortened_match_2) {
        msg = "bidegree table does not match the shortened filtrations";
        return false;
      }
    }
  }
  msg = "injectivity, colimit, gr dims on 50 filtrations; bidegree matches shortened filtrations";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*run)(std::string&);
  };
  const Criterion criteria[] = {
      {"kempf solver dominates rational grids", criterion1},
      {"greedy HN equals brute force", criterion2},
      {"insertion/deletion sign guarantees", criterion3},
      {"closed-form optimal weights dominate weight grids", criterion4},
      {"polygon h-prime integral strictly monotone under nesting", criterion5},
      {"stratification closedness and the non-proper counterexample", criterion6},
      {"toric degeneration fans of affine space", criterion7},
      {"building f-vectors and chamber counts", criterion8},
      {"futaki coefficient calculus and twist invariance", criterion9},
      {"rees filtration correspondence", criterion10},
  };
  int failures = 0;
  int num = 0;
  for (const auto& c : criteria) {
    ++num;
    std::string msg;
    bool ok = false;
    try {
      ok = c.run(msg);
    } catch (const Error& e) {
      msg = std::string("exception [") + e.code + "] " + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << " " << num << ": " << c.name << " — " << msg << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
