#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "instab/rat.hpp"

namespace instab {

// k-dimensional subspace of F_q^n, canonical reduced-row-echelon basis.
struct Subspace {
  int n = 0, q = 0;
  std::vector<std::vector<uint8_t>> basis;  // RREF rows
  int dim() const { return static_cast<int>(basis.size()); }
  bool operator==(const Subspace& o) const { return basis == o.basis; }
  bool operator<(const Subspace& o) const { return basis < o.basis; }
};

bool subspace_contains(const Subspace& big, const Subspace& small);

std::vector<Subspace> enumerate_subspaces(int n, int q, int k, long max_states = 1 << 16);

Int gaussian_binomial(int n, int k, int q);

struct FlagComplex {
  int n = 0, q = 0;
  std::vector<Subspace> vertices;             // all proper nonzero subspaces
  std::vector<std::vector<int>> containment;  // adjacency: strict inclusion (either way)
  std::vector<Int> f_vector;                  // f_vector[d] = number of d-simplices
};

FlagComplex building_complex(int n, int q, long max_states = 1 << 16);

struct BuildingStats {
  std::vector<Int> f_vector;
  Int euler_characteristic;
  bool pure = true;
  Int chambers;             // maximal-simplex count from the complex
  Int flag_count;           // independent product-formula count
  std::vector<Int> color_class_sizes;  // vertices per subspace dimension 1..n-1
};

BuildingStats building_stats(const FlagComplex& C);

std::string export_dot(const FlagComplex& C);
std::string export_off(const FlagComplex& C);

}  // namespace instab
