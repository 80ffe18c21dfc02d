#include "instab/hn.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace instab {

PhaseKey phase(const QC& z) {
  if (z.im < 0 || (z.im == 0 && z.re > 0))
    throw Error("OutOfRange", "charge outside the upper half-plane and nonpositive reals");
  if (z.im == 0) return {1, rat(0)};
  return {0, -z.re / z.im};
}

int compare_phase(const PhaseKey& a, const PhaseKey& b) {
  if (a.stage != b.stage) return a.stage < b.stage ? -1 : 1;
  if (a.slope == b.slope) return 0;
  return a.slope < b.slope ? -1 : 1;
}

int SubobjectLattice::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  throw Error("OutOfRange", "unknown lattice element '" + name + "'");
}

namespace {

int unique_extreme(const SubobjectLattice& L, const std::vector<int>& candidates, bool greatest) {
  for (int x : candidates) {
    bool extreme = true;
    for (int y : candidates) {
      if (x == y) continue;
      if (greatest ? !L.leq[y][x] : !L.leq[x][y]) {
        extreme = false;
        break;
      }
    }
    if (extreme) return x;
  }
  return -1;
}

}  // namespace

int SubobjectLattice::meet(int a, int b) const {
  std::vector<int> lower;
  for (int x = 0; x < size(); ++x)
    if (leq[x][a] && leq[x][b]) lower.push_back(x);
  return unique_extreme(*this, lower, true);
}

int SubobjectLattice::join(int a, int b) const {
  std::vector<int> upper;
  for (int x = 0; x < size(); ++x)
    if (leq[a][x] && leq[b][x]) upper.push_back(x);
  return unique_extreme(*this, upper, false);
}

SubobjectLattice make_lattice(std::vector<std::string> names,
                              const std::vector<std::pair<std::string, std::string>>& leq_pairs,
                              const std::map<std::string, QC>& Z) {
  SubobjectLattice L;
  L.names = std::move(names);
  int n = L.size();
  L.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) L.leq[i][i] = true;
  for (const auto& [a, b] : leq_pairs) L.leq[L.index_of(a)][L.index_of(b)] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (L.leq[i][k] && L.leq[k][j]) L.leq[i][j] = true;
  L.Z.assign(n, QC{});
  for (const auto& [name, z] : Z) L.Z[L.index_of(name)] = z;
  for (int x = 0; x < n; ++x) {
    bool bot = true, top = true;
    for (int y = 0; y < n; ++y) {
      if (!L.leq[x][y]) bot = false;
      if (!L.leq[y][x]) top = false;
    }
    if (bot) L.bottom = x;
    if (top) L.top = x;
  }
  return L;
}

ValidationReport validate_lattice(const SubobjectLattice& L) {
  ValidationReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };
  int n = L.size();
  if (n == 0) {
    fail("empty lattice");
    return rep;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && L.leq[a][b] && L.leq[b][a])
        fail("antisymmetry fails at " + L.names[a] + "," + L.names[b]);
  if (L.bottom < 0) fail("no bottom element");
  if (L.top < 0) fail("no top element");
  if (!rep.ok) return rep;
  if (!(L.Z[L.bottom] == QC{})) fail("Z(0) must be 0");
  for (int a = 0; a < n && rep.ok; ++a)
    for (int b = a + 1; b < n; ++b) {
      int m = L.meet(a, b), j = L.join(a, b);
      if (m < 0 || j < 0) {
        fail("meet/join missing for " + L.names[a] + "," + L.names[b]);
        continue;
      }
      QC lhs = L.Z[j] + L.Z[m], rhs = L.Z[a] + L.Z[b];
      if (!(lhs == rhs))
        fail("Z not modular-additive at " + L.names[a] + "," + L.names[b]);
    }
  if (!rep.ok) return rep;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (!L.leq[a][c]) continue;
        int x = L.join(a, L.meet(b, c));
        int y = L.meet(L.join(a, b), c);
        if (x != y) {
          fail("modular law fails at (" + L.names[a] + "," + L.names[b] + "," + L.names[c] + ")");
          return rep;
        }
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || !L.leq[a][b]) continue;
      QC z = L.Z[b] - L.Z[a];
      if (z.im < 0 || (z.im == 0 && z.re >= 0))
        fail("interval class outside H u R_{<0} at " + L.names[a] + " < " + L.names[b]);
    }
  return rep;
}

int max_torsion(const SubobjectLattice& L) {
  int t = L.bottom;
  for (int x = 0; x < L.size(); ++x) {
    if (L.Z[x].im != 0) continue;
    int j = L.join(t, x);
    if (j < 0 || L.Z[j].im != 0)
      throw Error("NotATorsionTheory",
                  "join of torsion elements " + L.names[t] + "," + L.names[x] + " is not torsion");
    t = j;
  }
  return t;
}

bool is_semistable(const SubobjectLattice& L) {
  PhaseKey top = phase(L.Z[L.top] - L.Z[L.bottom]);
  for (int a = 0; a < L.size(); ++a) {
    if (a == L.bottom || a == L.top || !L.less(L.bottom, a) || !L.less(a, L.top)) continue;
    if (compare_phase(phase(L.Z[a]), top) > 0) return false;
  }
  return true;
}

MuValue mu_rdw(const RankDegreeWeightSeq& a, const Rat& R, const Rat& D) {
  Rat sr = 0, sd = 0;
  for (const auto& e : a) {
    sr += e.r;
    sd += e.d;
  }
  if (sr != R || sd != D) throw Error("InconsistentTotal", "totals do not match the sequence");
  Rat L = 0, B = 0;
  for (const auto& e : a) {
    L += e.w * (R * e.d - D * e.r);
    B += e.w * e.w * e.r;
  }
  return mu_value(L, B);
}

DeleteResult delete_step(const RankDegreeWeightSeq& a, int k) {
  if (k < 1 || k >= static_cast<int>(a.size()))
    throw Error("OutOfRange", "delete_step index out of range");
  const RdwEntry &e1 = a[k - 1], &e2 = a[k];
  Rat rs = e1.r + e2.r;
  if (rs == 0) throw Error("ZeroRankPair", "adjacent ranks sum to zero");
  DeleteResult out;
  out.seq = a;
  RdwEntry merged{rs, e1.d + e2.d, (e1.w * e1.r + e2.w * e2.r) / rs};
  out.seq.erase(out.seq.begin() + k);
  out.seq[k - 1] = merged;
  out.dL = (e2.w - e1.w) / rs * (e1.d * e2.r - e1.r * e2.d);
  out.dB = -(e1.r * e2.r / rs) * (e1.w - e2.w) * (e1.w - e2.w);
  return out;
}

namespace {

// Weights and mu for blocks with strictly increasing slope; a single trailing
// rank-zero (torsion) block is allowed and makes mu infinite when its degree
// is positive.
std::pair<QVec, MuValue> weights_for_increasing(const std::vector<RdPiece>& blocks) {
  size_t p = blocks.size();
  bool torsion_tail = p > 0 && blocks[p - 1].r == 0;
  size_t q = torsion_tail ? p - 1 : p;
  Rat R = 0, D = 0;
  for (size_t j = 0; j < q; ++j) {
    R += blocks[j].r;
    D += blocks[j].d;
  }
  QVec w(p, rat(0));
  MuValue mu;
  if (q > 0) {
    Rat nu = D / R;
    Rat B = 0;
    for (size_t j = 0; j < q; ++j) {
      w[j] = blocks[j].d / blocks[j].r - nu;
      B += w[j] * w[j] * blocks[j].r;
    }
    mu = mu_value(R * B, B);
  }
  if (torsion_tail) {
    w[p - 1] = (q > 0 ? w[q - 1] : rat(0)) + 1;
    if (blocks[p - 1].d > 0 && R > 0) mu = mu_value(rat(1), rat(0));  // +infinity
  }
  return {w, mu};
}

bool slope_geq(const RdPiece& a, const RdPiece& b) { return a.d * b.r >= b.d * a.r; }

}  // namespace

std::pair<QVec, MuValue> optimal_weights(const std::vector<RdPiece>& pieces) {
  for (size_t j = 0; j < pieces.size(); ++j) {
    if (pieces[j].r <= 0) throw Error("NotConvex", "ranks must be positive");
    if (j > 0 && slope_geq(pieces[j - 1], pieces[j]))
      throw Error("NotConvex", "slopes must be strictly increasing");
  }
  return weights_for_increasing(pieces);
}

std::pair<QVec, MuValue> pava_max(const std::vector<RdPiece>& pieces) {
  struct Block {
    RdPiece v;
    size_t begin, end;
  };
  std::vector<Block> stack;
  for (size_t j = 0; j < pieces.size(); ++j) {
    stack.push_back({pieces[j], j, j + 1});
    while (stack.size() >= 2 && slope_geq(stack[stack.size() - 2].v, stack.back().v)) {
      Block b = stack.back();
      stack.pop_back();
      stack.back().v.r += b.v.r;
      stack.back().v.d += b.v.d;
      stack.back().end = b.end;
    }
  }
  std::vector<RdPiece> blocks;
  for (const auto& b : stack) blocks.push_back(b.v);
  auto [bw, mu] = weights_for_increasing(blocks);
  QVec w(pieces.size(), rat(0));
  for (size_t bi = 0; bi < stack.size(); ++bi)
    for (size_t j = stack[bi].begin; j < stack[bi].end; ++j) w[j] = bw[bi];
  return {w, mu};
}

Polygon pol(std::vector<RdPiece> pieces) {
  std::stable_sort(pieces.begin(), pieces.end(), [](const RdPiece& a, const RdPiece& b) {
    return a.d * b.r > b.d * a.r;  // decreasing slope; rank-0 jumps first
  });
  Polygon P;
  P.R = 0;
  P.D = 0;
  for (const auto& p : pieces) {
    if (p.r < 0) throw Error("OutOfRange", "negative rank piece");
    P.R += p.r;
    P.D += p.d;
  }
  P.pieces = std::move(pieces);
  return P;
}

Rat h_function(const Polygon& P, const Rat& x) {
  if (x < 0 || x > P.R) throw Error("OutOfRange", "argument outside [0, R]");
  Rat val = 0, rem = x;
  for (const auto& p : P.pieces) {
    if (p.r == 0) {
      if (p.d > 0) val += p.d;
      continue;
    }
    Rat t = std::min(rem, p.r);
    val += p.d / p.r * t;
    rem -= t;
  }
  return val;
}

std::vector<std::pair<Rat, Rat>> polygon_breakpoints(const Polygon& P) {
  std::vector<std::pair<Rat, Rat>> out;
  Rat x = 0, h = 0;
  for (const auto& p : P.pieces)
    if (p.r == 0 && p.d > 0) h += p.d;
  out.push_back({x, h});
  for (const auto& p : P.pieces) {
    if (p.r == 0) continue;
    x += p.r;
    h += p.d;
    out.push_back({x, h});
  }
  return out;
}

Rat integral_h_prime_sq(const Polygon& P) {
  Rat s = 0;
  for (const auto& p : P.pieces)
    if (p.r > 0) s += p.d * p.d / p.r;
  return s;
}

bool polygon_leq(const Polygon& P1, const Polygon& P2) {
  if (P1.R != P2.R || P1.D != P2.D)
    throw Error("EndpointMismatch", "polygons must share total (R, D)");
  std::vector<Rat> xs;
  for (const auto& [x, h] : polygon_breakpoints(P1)) xs.push_back(x);
  for (const auto& [x, h] : polygon_breakpoints(P2)) xs.push_back(x);
  for (const auto& x : xs)
    if (h_function(P1, x) > h_function(P2, x)) return false;
  return true;
}

namespace {

std::vector<RdPiece> chain_pieces_topdown(const SubobjectLattice& L, const std::vector<int>& chain) {
  std::vector<RdPiece> out;
  for (size_t i = chain.size() - 1; i > 0; --i) {
    QC z = L.Z[chain[i]] - L.Z[chain[i - 1]];
    out.push_back({z.im, -z.re});
  }
  return out;
}

}  // namespace

HNResult hn_filtration(const SubobjectLattice& L) {
  ValidationReport rep = validate_lattice(L);
  if (!rep.ok) throw Error("NotValid", rep.violations.front());
  std::vector<int> chain{L.bottom};
  int cur = L.bottom;
  while (cur != L.top) {
    std::vector<int> best;
    PhaseKey best_phase;
    Rat best_im;
    for (int x = 0; x < L.size(); ++x) {
      if (!L.less(cur, x)) continue;
      QC z = L.Z[x] - L.Z[cur];
      PhaseKey ph = phase(z);
      if (best.empty() || compare_phase(ph, best_phase) > 0 ||
          (compare_phase(ph, best_phase) == 0 && z.im > best_im)) {
        best = {x};
        best_phase = ph;
        best_im = z.im;
      } else if (compare_phase(ph, best_phase) == 0 && z.im == best_im) {
        best.push_back(x);
      }
    }
    // Among phase/rank ties keep the lattice-maximal ones.
    std::vector<int> maximal;
    for (int x : best) {
      bool top_tie = true;
      for (int y : best)
        if (y != x && L.less(x, y)) {
          top_tie = false;
          break;
        }
      if (top_tie) maximal.push_back(x);
    }
    if (maximal.size() != 1)
      throw Error("AmbiguousMaxDestabilizer", "maximal destabilizer is not unique");
    chain.push_back(maximal[0]);
    cur = maximal[0];
  }
  // Each graded piece must be semistable inside its interval.
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    PhaseKey gr = phase(L.Z[chain[i + 1]] - L.Z[chain[i]]);
    for (int x = 0; x < L.size(); ++x) {
      if (!L.less(chain[i], x) || !L.less(x, chain[i + 1])) continue;
      if (compare_phase(phase(L.Z[x] - L.Z[chain[i]]), gr) > 0)
        throw Error("NotValid", "graded piece is not semistable in its interval");
    }
  }
  HNResult out;
  out.chain = chain;
  for (size_t i = chain.size() - 1; i > 0; --i)
    out.pieces.push_back(L.Z[chain[i]] - L.Z[chain[i - 1]]);
  for (size_t j = 0; j + 1 < out.pieces.size(); ++j)
    if (compare_phase(phase(out.pieces[j]), phase(out.pieces[j + 1])) >= 0)
      throw Error("NotValid", "graded phases are not strictly increasing");
  auto [w, mu] = weights_for_increasing(chain_pieces_topdown(L, chain));
  out.weights = w;
  out.mu = mu;
  out.semistable = out.pieces.size() <= 1;
  return out;
}

HNResult brute_force_max(const SubobjectLattice& L, int size_bound) {
  if (L.size() > size_bound) throw Error("TooLarge", "lattice exceeds the brute-force bound");
  ValidationReport rep = validate_lattice(L);
  if (!rep.ok) throw Error("NotValid", rep.violations.front());

  // Covering relations.
  std::vector<std::vector<int>> covers(L.size());
  for (int a = 0; a < L.size(); ++a)
    for (int b = 0; b < L.size(); ++b) {
      if (!L.less(a, b)) continue;
      bool cover = true;
      for (int c = 0; c < L.size(); ++c)
        if (L.less(a, c) && L.less(c, b)) {
          cover = false;
          break;
        }
      if (cover) covers[a].push_back(b);
    }

  struct Collapsed {
    std::vector<int> chain;  // ascending
    QVec weights;            // per piece, phase-increasing (top-down) order
  };
  std::optional<MuValue> best;
  std::optional<Collapsed> best_data;
  std::optional<Polygon> best_poly;
  std::set<std::pair<std::vector<int>, QVec>> best_sigs;

  std::vector<int> chain{L.bottom};
  std::function<void()> dfs = [&]() {
    int cur = chain.back();
    if (cur == L.top) {
      auto pieces = chain_pieces_topdown(L, chain);
      auto [w, mu] = pava_max(pieces);
      Collapsed col;
      size_t m = pieces.size();  // piece j spans (chain[m-1-j], chain[m-j])
      if (m == 0) {
        col.chain = chain;
      } else {
        // Merge equal-weight neighbors: keep the elements at block breaks.
        std::vector<int> desc{chain.back()};
        for (size_t j = 0; j < m; ++j) {
          if (j == 0 || w[j] != w[j - 1]) col.weights.push_back(w[j]);
          if (j + 1 < m && w[j + 1] != w[j]) desc.push_back(chain[m - 1 - j]);
        }
        desc.push_back(chain.front());
        col.chain.assign(desc.rbegin(), desc.rend());
      }
      auto sig = std::make_pair(col.chain, col.weights);
      Polygon poly = pol(chain_pieces_topdown(L, col.chain));
      if (!best || compare_mu(mu, *best) > 0) {
        best = mu;
        best_data = col;
        best_poly = poly;
        best_sigs = {sig};
      } else if (compare_mu(mu, *best) == 0) {
        best_sigs.insert(sig);
        // Among equal values keep the canonical chain: its polygon dominates.
        if (polygon_leq(*best_poly, poly) && !polygon_leq(poly, *best_poly)) {
          best_data = col;
          best_poly = poly;
        }
      }
      return;
    }
    for (int nxt : covers[cur]) {
      chain.push_back(nxt);
      dfs();
      chain.pop_back();
    }
  };
  dfs();

  HNResult out;
  if (!best_data) throw Error("NotValid", "no chain from bottom to top");
  out.chain = best_data->chain;
  for (size_t i = out.chain.size() - 1; i > 0; --i)
    out.pieces.push_back(L.Z[out.chain[i]] - L.Z[out.chain[i - 1]]);
  out.weights = best_data->weights;
  out.mu = *best;
  out.semistable = out.mu.sign <= 0 && !out.mu.infinite;
  out.unique = best_sigs.size() == 1;
  return out;
}

ContainmentReport check_containment(const SubobjectLattice& L) {
  HNResult hn = hn_filtration(L);
  std::vector<RdPiece> pieces;
  for (const auto& z : hn.pieces) pieces.push_back({z.im, -z.re});
  Polygon P = pol(pieces);
  ContainmentReport rep;
  for (int a = 0; a < L.size(); ++a) {
    Rat ra = L.Z[a].im, da = -L.Z[a].re;
    if (ra < 0 || ra > P.R || h_function(P, ra) < da) {
      rep.ok = false;
      rep.witness = a;
      return rep;
    }
  }
  return rep;
}

// --- Rees construction ---

namespace {

long rank_q(const QMat& M) { return M.empty() ? 0 : rank(M); }

bool subspace_leq(const QMat& small, const QMat& big) {
  QMat stacked = big;
  for (const auto& row : small) stacked.push_back(row);
  return rank_q(stacked) == rank_q(big);
}

}  // namespace

ReesReport rees_module(int n, const std::vector<QMat>& subspaces, const std::vector<long>& weights,
                       int multi_degree) {
  int p = static_cast<int>(subspaces.size());
  std::vector<long> dims{n};  // dim E_0 .. dim E_p
  for (const auto& sub : subspaces)
    for (const auto& row : sub)
      if (static_cast<int>(row.size()) != n)
        throw Error("DimensionMismatch", "subspace rows must have length n");
  for (int j = 0; j < p; ++j) {
    const QMat& big = j == 0 ? QMat(0) : subspaces[j - 1];
    if (j > 0 && !subspace_leq(subspaces[j], big))
      throw Error("NotNested", "subspaces must be nested");
    long d = rank_q(subspaces[j]);
    if (d >= dims.back() || d < 1) throw Error("NotNested", "nesting must be strict and nonzero");
    dims.push_back(d);
  }

  ReesReport rep;
  if (multi_degree == 1) {
    if (static_cast<int>(weights.size()) != p + 1)
      throw Error("WeightsNotIncreasing", "need one weight per filtration step");
    for (size_t i = 1; i < weights.size(); ++i)
      if (weights[i] <= weights[i - 1])
        throw Error("WeightsNotIncreasing", "weights must be strictly increasing");
    auto dim_at = [&](long w) -> long {
      if (w > weights[p]) return 0;
      for (int j = 0; j <= p; ++j)
        if (weights[j] >= w) return dims[j];
      return 0;  // unreachable
    };
    for (long w = weights[0] - 1; w <= weights[p] + 1; ++w)
      rep.dim_table.push_back({w, dim_at(w)});
    for (size_t i = 1; i < rep.dim_table.size(); ++i)
      if (rep.dim_table[i].second > rep.dim_table[i - 1].second) rep.t_injective = false;
    rep.colim_ok = dim_at(weights[0] - 1) == n;
    for (int j = 0; j <= p; ++j) {
      long gr = dim_at(weights[j]) - dim_at(weights[j] + 1);
      long expect = dims[j] - (j + 1 <= p ? dims[j + 1] : 0);
      rep.gr_dims.push_back(gr);
      if (gr != expect) {
        rep.ok = false;
        rep.issues.push_back("graded dimension mismatch at step " + std::to_string(j));
      }
    }
    rep.ok = rep.ok && rep.t_injective && rep.colim_ok;
    if (!rep.t_injective) rep.issues.push_back("t-multiplication not injective");
    if (!rep.colim_ok) rep.issues.push_back("colimit does not recover E");
    return rep;
  }

  if (multi_degree != 2 || p != 2)
    throw Error("DimensionMismatch", "multi_degree 2 requires exactly two subspaces");
  // Canonical pattern: E_j sits at (t_1...t_j)^{-1}.
  auto dim_at2 = [&](long m1, long m2) -> long {
    if (m1 >= 0 && m2 >= 0) return dims[0];
    if (m1 == -1 && m2 >= 0) return dims[1];
    if (m2 == -1 && m1 >= -1) return dims[2];
    return 0;
  };
  for (long m1 = -2; m1 <= 1; ++m1)
    for (long m2 = -2; m2 <= 1; ++m2) rep.dim_table2[{m1, m2}] = dim_at2(m1, m2);
  for (long m1 = -2; m1 <= 0; ++m1)
    for (long m2 = -2; m2 <= 0; ++m2) {
      if (dim_at2(m1, m2) > dim_at2(m1 + 1, m2)) rep.t_injective = false;
      if (dim_at2(m1, m2) > dim_at2(m1, m2 + 1)) rep.t_injective = false;
    }
  rep.colim_ok = dim_at2(1, 1) == n;
  // gr^{(k)} as a module in the other variable vs the shortened filtration.
  auto shortened_dim = [&](long second, long m) -> long {
    if (m >= 0) return n;
    if (m == -1) return second;
    return 0;
  };
  for (long m = -2; m <= 1; ++m) {
    if (dim_at2(0, m) != shortened_dim(dims[2], m)) rep.shortened_match_1 = false;
    if (dim_at2(m, 0) != shortened_dim(dims[1], m)) rep.shortened_match_2 = false;
  }
  rep.ok = rep.t_injective && rep.colim_ok && rep.shortened_match_1 && rep.shortened_match_2;
  if (!rep.ok) rep.issues.push_back("bi-graded verification failed");
  return rep;
}

}  // namespace instab
