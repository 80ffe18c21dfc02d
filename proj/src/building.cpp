#include "instab/building.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace instab {

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

// Reduces v against the RREF rows of big; returns true if it reduces to zero.
bool reduces_to_zero(const Subspace& big, std::vector<uint8_t> v) {
  int q = big.q;
  for (const auto& row : big.basis) {
    int pivot = -1;
    for (int j = 0; j < big.n; ++j)
      if (row[j]) {
        pivot = j;
        break;
      }
    if (pivot < 0 || v[pivot] == 0) continue;
    int f = v[pivot];
    for (int j = 0; j < big.n; ++j) v[j] = static_cast<uint8_t>((v[j] + (q - f) * row[j]) % q);
  }
  return std::all_of(v.begin(), v.end(), [](uint8_t x) { return x == 0; });
}

}  // namespace

bool subspace_contains(const Subspace& big, const Subspace& small) {
  if (big.n != small.n || big.q != small.q)
    throw Error("DimensionMismatch", "subspaces live in different spaces");
  for (const auto& row : small.basis)
    if (!reduces_to_zero(big, row)) return false;
  return true;
}

Int gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  Rat result = 1;
  Int Q = q;
  auto qpow_minus1 = [&](int e) {
    Int p = 1;
    for (int i = 0; i < e; ++i) p *= Q;
    return Int(p - 1);
  };
  for (int i = 0; i < k; ++i) result *= rat(qpow_minus1(n - i), qpow_minus1(i + 1));
  if (result.get_den() != 1) throw Error("InternalError", "gaussian binomial not integral");
  return result.get_num();
}

std::vector<Subspace> enumerate_subspaces(int n, int q, int k, long max_states) {
  if (!is_prime(q)) throw Error("OutOfRange", "field order must be prime");
  if (k < 1 || k > n - 1) throw Error("OutOfRange", "need 1 <= k <= n-1");
  double states = 1;
  for (int i = 0; i < n; ++i) states *= q;
  if (states > static_cast<double>(max_states))
    throw Error("TooLarge", "q^n exceeds the enumeration bound");

  std::vector<Subspace> out;
  // Pivot column combinations, lexicographic.
  std::vector<int> piv(k);
  std::function<void(int, int)> pivots = [&](int start, int depth) {
    if (depth == k) {
      // Free positions: to the right of each pivot, excluding pivot columns.
      std::vector<std::pair<int, int>> free_pos;
      std::vector<bool> is_piv(n, false);
      for (int c : piv) is_piv[c] = true;
      for (int i = 0; i < k; ++i)
        for (int j = piv[i] + 1; j < n; ++j)
          if (!is_piv[j]) free_pos.push_back({i, j});
      long total = 1;
      for (size_t a = 0; a < free_pos.size(); ++a) total *= q;
      for (long code = 0; code < total; ++code) {
        Subspace s;
        s.n = n;
        s.q = q;
        s.basis.assign(k, std::vector<uint8_t>(n, 0));
        for (int i = 0; i < k; ++i) s.basis[i][piv[i]] = 1;
        long c = code;
        for (const auto& [i, j] : free_pos) {
          s.basis[i][j] = static_cast<uint8_t>(c % q);
          c /= q;
        }
        out.push_back(std::move(s));
      }
      return;
    }
    for (int c = start; c <= n - (k - depth); ++c) {
      piv[depth] = c;
      pivots(c + 1, depth + 1);
    }
  };
  pivots(0, 0);
  std::sort(out.begin(), out.end());
  if (Int(static_cast<long>(out.size())) != gaussian_binomial(n, k, q))
    throw Error("InternalError", "subspace count disagrees with the gaussian binomial");
  return out;
}

FlagComplex building_complex(int n, int q, long max_states) {
  if (n < 2) throw Error("OutOfRange", "need n >= 2");
  FlagComplex C;
  C.n = n;
  C.q = q;
  for (int k = 1; k <= n - 1; ++k) {
    auto subs = enumerate_subspaces(n, q, k, max_states);
    C.vertices.insert(C.vertices.end(), subs.begin(), subs.end());
  }
  int V = static_cast<int>(C.vertices.size());
  C.containment.assign(V, {});
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (C.vertices[i].dim() >= C.vertices[j].dim()) continue;
      if (subspace_contains(C.vertices[j], C.vertices[i])) C.containment[i].push_back(j);
    }
  // Chains counted by size via upward DP (vertices are sorted by dimension).
  std::vector<std::vector<Int>> cnt(V, std::vector<Int>(n, 0));
  for (int v = 0; v < V; ++v) cnt[v][1] = 1;
  for (int v = 0; v < V; ++v)
    for (int w : C.containment[v])
      for (int s = 1; s + 1 < n; ++s) cnt[w][s + 1] += cnt[v][s];
  C.f_vector.assign(n - 1, 0);
  for (int v = 0; v < V; ++v)
    for (int s = 1; s <= n - 1; ++s) C.f_vector[s - 1] += cnt[v][s];
  return C;
}

BuildingStats building_stats(const FlagComplex& C) {
  BuildingStats st;
  st.f_vector = C.f_vector;
  st.euler_characteristic = 0;
  for (size_t d = 0; d < C.f_vector.size(); ++d)
    st.euler_characteristic += (d % 2 ? -C.f_vector[d] : C.f_vector[d]);

  int V = static_cast<int>(C.vertices.size());
  st.color_class_sizes.assign(C.n - 1, 0);
  for (const auto& v : C.vertices) st.color_class_sizes[v.dim() - 1] += 1;

  // Purity: every gap of >= 2 dimensions between nested vertices has an
  // intermediate, and every vertex extends up and down to a complete flag.
  std::vector<std::vector<bool>> leq(V, std::vector<bool>(V, false));
  for (int i = 0; i < V; ++i)
    for (int j : C.containment[i]) leq[i][j] = true;
  for (int i = 0; i < V; ++i)
    for (int j = 0; j < V; ++j) {
      if (!leq[i][j] || C.vertices[j].dim() - C.vertices[i].dim() < 2) continue;
      bool filled = false;
      for (int m = 0; m < V && !filled; ++m)
        if (leq[i][m] && leq[m][j]) filled = true;
      if (!filled) st.pure = false;
    }
  for (int i = 0; i < V; ++i) {
    if (C.vertices[i].dim() > 1) {
      bool below = false;
      for (int m = 0; m < V; ++m)
        if (leq[m][i] && C.vertices[m].dim() == C.vertices[i].dim() - 1) below = true;
      if (!below) st.pure = false;
    }
    if (C.vertices[i].dim() < C.n - 1) {
      bool above = false;
      for (int m = 0; m < V; ++m)
        if (leq[i][m] && C.vertices[m].dim() == C.vertices[i].dim() + 1) above = true;
      if (!above) st.pure = false;
    }
  }

  st.chambers = C.f_vector.back();
  st.flag_count = 1;
  Int Q = C.q;
  for (int k = 2; k <= C.n; ++k) {
    Int num = 1;
    for (int i = 0; i < k; ++i) num *= Q;
    st.flag_count *= (num - 1) / (Q - 1);
  }
  return st;
}

std::string export_dot(const FlagComplex& C) {
  std::ostringstream os;
  os << "graph building {\n";
  for (size_t i = 0; i < C.vertices.size(); ++i)
    os << "  v" << i << " [label=\"dim " << C.vertices[i].dim() << "\"];\n";
  for (size_t i = 0; i < C.vertices.size(); ++i)
    for (int j : C.containment[i])
      if (C.vertices[j].dim() == C.vertices[i].dim() + 1) os << "  v" << i << " -- v" << j << ";\n";
  os << "}\n";
  return os.str();
}

std::string export_off(const FlagComplex& C) {
  std::ostringstream os;
  os << "OFF\n" << C.vertices.size() << " " << C.f_vector.back() << " 0\n";
  for (size_t i = 0; i < C.vertices.size(); ++i)
    os << C.vertices[i].dim() << " " << i << " 0\n";
  // Maximal chains as faces (complete flags).
  std::vector<int> chain;
  std::function<void(int)> dfs = [&](int v) {
    chain.push_back(v);
    if (C.vertices[v].dim() == C.n - 1) {
      os << chain.size();
      for (int x : chain) os << " " << x;
      os << "\n";
    } else {
      for (int w : C.containment[v])
        if (C.vertices[w].dim() == C.vertices[v].dim() + 1) dfs(w);
    }
    chain.pop_back();
  };
  for (size_t v = 0; v < C.vertices.size(); ++v)
    if (C.vertices[v].dim() == 1) dfs(static_cast<int>(v));
  return os.str();
}

}  // namespace instab
