#pragma once

#include <random>
#include <vector>

#include "instab/cones.hpp"

namespace instab::testing {

inline ZVec zv(std::initializer_list<long> xs) {
  ZVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

inline QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.push_back(rat(x));
  return v;
}

inline ZMat zm(std::initializer_list<std::initializer_list<long>> rows) {
  ZMat m;
  for (const auto& r : rows) m.push_back(zv(r));
  return m;
}

inline QMat qm(std::initializer_list<std::initializer_list<long>> rows) {
  QMat m;
  for (const auto& r : rows) m.push_back(qv(r));
  return m;
}

inline RationalCone mk_cone(int dim, std::initializer_list<std::initializer_list<long>> gens) {
  return RationalCone::from_generators(dim, zm(gens));
}

inline QMat identity_q(int n) {
  QMat m(n, QVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Uniform rational in [lo, hi] with denominator dividing den.
inline Rat rand_rat(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> dist(lo * den, hi * den);
  return rat(dist(rng), den);
}

inline long rand_int(std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  return dist(rng);
}

}  // namespace instab::testing
