#include "instab/formalfan.hpp"

namespace instab {

FormalFan formal_fan(int ambient_dim, std::vector<RationalCone> pieces) {
  FormalFan F;
  F.ambient_dim = ambient_dim;
  for (auto& p : pieces) {
    if (p.ambient_dim() != ambient_dim)
      throw Error("DimensionMismatch", "formal fan pieces must share the ambient dimension");
    if (!p.is_zero()) F.pieces.push_back(std::move(p));
  }
  return F;
}

bool fan_cones(const FormalFan& F, int n, const ZMat& M) {
  if (static_cast<int>(M.size()) != F.ambient_dim)
    throw Error("DimensionMismatch", "matrix rows must match the fan's ambient dimension");
  for (const auto& row : M)
    if (static_cast<int>(row.size()) != n)
      throw Error("DimensionMismatch", "matrix columns must match n");
  if (rank(M) != n) return false;
  ZMat cols(n, ZVec(F.ambient_dim));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < F.ambient_dim; ++i) cols[j][i] = M[i][j];
  for (const auto& c : cols)
    if (is_zero(c)) return false;
  for (const auto& piece : F.pieces) {
    bool all = true;
    for (const auto& c : cols)
      if (!piece.contains(c)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

bool realization_contains(const FormalFan& F, const QVec& x) {
  for (const auto& piece : F.pieces)
    if (piece.contains(x)) return true;
  return is_zero(x);
}

FormalFan restrict(const FormalFan& F, const ConeMorphism& phi) {
  if (phi.rows() != F.ambient_dim)
    throw Error("DimensionMismatch", "morphism target must match the fan's ambient dimension");
  if (!morphism_check(phi.matrix, phi.cols(), phi.rows()))
    throw Error("BadMorphism", "restrict requires a nonnegative injective matrix");
  int k = phi.cols();
  ZMat orthant(k, ZVec(k, 0));
  for (int i = 0; i < k; ++i) orthant[i][i] = 1;
  std::vector<RationalCone> pieces;
  for (const auto& piece : F.pieces) {
    const auto& f = piece.facets();
    ZMat eqs, ineqs = orthant;
    auto pull = [&](const ZVec& h) {
      ZVec hp(k, 0);
      for (int j = 0; j < k; ++j)
        for (int i = 0; i < phi.rows(); ++i) hp[j] += h[i] * phi.matrix[i][j];
      return hp;
    };
    for (const auto& e : f.equalities) eqs.push_back(pull(e));
    for (const auto& h : f.inequalities) ineqs.push_back(pull(h));
    pieces.push_back(RationalCone::from_inequalities(k, eqs, ineqs));
  }
  return formal_fan(k, std::move(pieces));
}

FormalFan toric_degeneration_fan(const Fan& sigma, const ZMat& pi) {
  int n_prime = static_cast<int>(pi.size());
  if (n_prime == 0 || sigma.ambient_dim != n_prime)
    throw Error("DimensionMismatch", "projection rows must match the fan's ambient dimension");
  int N = static_cast<int>(pi[0].size());
  if (rank(pi) != n_prime)
    throw Error("NotSurjective", "projection matrix must have full row rank");
  std::vector<RationalCone> pieces;
  for (const auto& cone : sigma.cones) {
    const auto& f = cone.facets();
    auto pull = [&](const ZVec& h) {
      ZVec hp(N, 0);
      for (int j = 0; j < N; ++j)
        for (int i = 0; i < n_prime; ++i) hp[j] += h[i] * pi[i][j];
      return hp;
    };
    ZMat eqs, ineqs;
    for (const auto& e : f.equalities) eqs.push_back(pull(e));
    for (const auto& h : f.inequalities) ineqs.push_back(pull(h));
    pieces.push_back(RationalCone::from_inequalities(N, eqs, ineqs));
  }
  FormalFan F = formal_fan(N, std::move(pieces));
  std::vector<RationalCone> closure;
  for (const auto& p : F.pieces)
    for (const auto& face : p.faces()) {
      bool dup = false;
      for (const auto& c : closure)
        if (c.same_cone(face)) {
          dup = true;
          break;
        }
      if (!dup) closure.push_back(face);
    }
  F.classical_fan_certified = is_classical_fan(closure);
  return F;
}

bool DegenerationModel::allows(const std::set<int>& support) const {
  for (const auto& ex : excluded_supports)
    if (ex == support) return false;
  return true;
}

DegenerationModel DegenerationModel::punctured(ZMat weights) {
  DegenerationModel D;
  D.weights = std::move(weights);
  D.excluded_supports.push_back({});
  return D;
}

RationalCone admissible_cone(const DegenerationModel& D, const std::set<int>& S) {
  ZMat ineqs;
  for (int i : S) {
    if (i < 1 || i > D.n()) throw Error("OutOfRange", "support index out of range");
    ineqs.push_back(D.weights[i - 1]);
  }
  return RationalCone::from_inequalities(D.k(), {}, ineqs);
}

}  // namespace instab
