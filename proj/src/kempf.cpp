#include "instab/kempf.hpp"

#include <algorithm>
#include <random>

namespace instab {

std::optional<std::pair<Ray, MuValue>> maximize_on_simplicial_cone(const QVec& l, const QMat& B,
                                                                   const RationalCone& C) {
  if (!C.is_simplicial()) throw Error("NotSimplicial", "solver requires a simplicial cone");
  size_t m = C.generators().size();
  if (m == 0) return std::nullopt;
  QMat V;
  for (const auto& g : C.generators()) V.push_back(to_qvec(g.coords));
  QMat Q(m, QVec(m));
  QVec c(m);
  for (size_t a = 0; a < m; ++a) {
    c[a] = dot(V[a], l);
    for (size_t b = 0; b < m; ++b) Q[a][b] = eval_form(B, V[a], V[b]);
  }
  if (!positive_definite(Q))
    throw Error("NotPositiveDefinite", "form is not positive definite on the cone");

  std::optional<Rat> best;      // best value of mu^2
  QVec best_lambda;             // in full coordinates
  for (size_t mask = 1; mask < (size_t{1} << m); ++mask) {
    std::vector<size_t> T;
    for (size_t a = 0; a < m; ++a)
      if (mask & (size_t{1} << a)) T.push_back(a);
    QMat QT(T.size(), QVec(T.size()));
    QVec cT(T.size());
    for (size_t a = 0; a < T.size(); ++a) {
      cT[a] = c[T[a]];
      for (size_t b = 0; b < T.size(); ++b) QT[a][b] = Q[T[a]][T[b]];
    }
    auto lam = solve(QT, cT);
    if (!lam) continue;  // cannot happen for PD Q, kept as a guard
    bool interior = true;
    for (const auto& x : *lam)
      if (x <= 0) {
        interior = false;
        break;
      }
    if (!interior) continue;
    Rat v = dot(cT, *lam);  // = c_T^t Q_T^{-1} c_T = mu^2 at the candidate
    if (v <= 0) continue;
    if (!best || v > *best) {
      best = v;
      best_lambda.assign(m, rat(0));
      for (size_t a = 0; a < T.size(); ++a) best_lambda[T[a]] = (*lam)[a];
    }
  }
  if (!best) return std::nullopt;
  QVec x(C.ambient_dim(), rat(0));
  for (size_t a = 0; a < m; ++a) x = add(x, scale(best_lambda[a], V[a]));
  Ray ray = canonicalize_ray(num_scaled(x));
  // mu^2 = v, encoded as L = B = v so that L/sqrt(B) = sqrt(v).
  return std::make_pair(ray, mu_value(*best, *best));
}

std::vector<RationalCone> pointed_simplicial_cover(const RationalCone& C) {
  if (C.strictly_convex()) return C.simplicial_subdivision();
  const auto& f = C.facets();
  ZMat all = f.equalities;
  all.insert(all.end(), f.inequalities.begin(), f.inequalities.end());
  ZMat K = all.empty() ? ZMat{} : nullspace(all);
  if (all.empty()) {
    // No constraints at all: the cone is the full ambient space.
    K.clear();
    for (int i = 0; i < C.ambient_dim(); ++i) {
      ZVec e(C.ambient_dim(), 0);
      e[i] = 1;
      K.push_back(e);
    }
  }
  int k = static_cast<int>(K.size());

  // Complement of the lineality inside the span, drawn from the generators.
  ZMat basis = K;
  std::vector<ZVec> W;
  for (const auto& g : C.generators()) {
    ZMat probe = basis;
    probe.push_back(g.coords);
    if (rank(probe) > rank(basis)) {
      basis = probe;
      W.push_back(g.coords);
    }
  }
  int w = static_cast<int>(W.size());

  // Coordinates of each generator in the basis (W, K); alpha = W-part.
  QMat M(C.ambient_dim(), QVec(w + k, rat(0)));
  for (int i = 0; i < C.ambient_dim(); ++i) {
    for (int a = 0; a < w; ++a) M[i][a] = Rat(W[a][i]);
    for (int b = 0; b < k; ++b) M[i][w + b] = Rat(K[b][i]);
  }
  std::vector<std::pair<ZVec, ZVec>> images;  // (alpha primitive, original gen)
  for (const auto& g : C.generators()) {
    auto sol = solve(M, to_qvec(g.coords));
    if (!sol) throw Error("InternalError", "generator outside its own span");
    QVec alpha(sol->begin(), sol->begin() + w);
    if (is_zero(alpha)) continue;  // generator inside the lineality space
    images.emplace_back(primitive(num_scaled(alpha)), g.coords);
  }

  std::vector<RationalCone> out;
  auto with_signs = [&](const ZMat& pointed_gens) {
    for (size_t eps = 0; eps < (size_t{1} << k); ++eps) {
      ZMat gens = pointed_gens;
      for (int b = 0; b < k; ++b)
        gens.push_back(eps & (size_t{1} << b) ? neg(K[b]) : K[b]);
      out.push_back(RationalCone::from_generators(C.ambient_dim(), gens));
    }
  };
  if (w == 0) {
    with_signs({});
    return out;
  }
  ZMat alpha_gens;
  for (const auto& [alpha, g] : images) alpha_gens.push_back(alpha);
  RationalCone image_cone = RationalCone::from_generators(w, alpha_gens);
  for (const auto& piece : image_cone.simplicial_subdivision()) {
    ZMat lifted;
    for (const auto& r : piece.generators()) {
      for (const auto& [alpha, g] : images)
        if (alpha == r.coords) {
          lifted.push_back(g);
          break;
        }
    }
    if (lifted.size() != piece.generators().size())
      throw Error("InternalError", "image ray without a preimage generator");
    with_signs(lifted);
  }
  return out;
}

namespace {

void merge_candidate(DestabResult& acc, const Ray& ray, const MuValue& v, int piece) {
  if (acc.status == DestabResult::Status::SemistableNonPositive || compare_mu(v, acc.value) > 0) {
    acc.status = DestabResult::Status::Unstable;
    acc.value = v;
    acc.argmax_rays = {ray};
    acc.cone_indices = {piece};
    return;
  }
  if (compare_mu(v, acc.value) < 0) return;
  if (std::find(acc.argmax_rays.begin(), acc.argmax_rays.end(), ray) == acc.argmax_rays.end()) {
    acc.argmax_rays.push_back(ray);
    acc.cone_indices.push_back(piece);
  }
}

}  // namespace

DestabResult maximize_on_fan(const NumericalInvariant& inv, const FormalFan& F) {
  if (inv.l.per_cone.size() != F.pieces.size() || inv.b.per_cone.size() != F.pieces.size())
    throw Error("IncompatibleClass", "one (l, b) datum per fan piece required");
  DestabResult acc;
  for (size_t p = 0; p < F.pieces.size(); ++p) {
    for (const auto& simp : pointed_simplicial_cover(F.pieces[p])) {
      auto r = maximize_on_simplicial_cone(inv.l.per_cone[p], inv.b.per_cone[p], simp);
      if (r) merge_candidate(acc, r->first, r->second, static_cast<int>(p));
    }
  }
  acc.unique = acc.status == DestabResult::Status::Unstable && acc.argmax_rays.size() == 1;
  return acc;
}

NumericalInvariant uniform_invariant(const QVec& l, const QMat& B, const FormalFan& F) {
  NumericalInvariant inv;
  inv.l.fan.ambient_dim = F.ambient_dim;
  inv.l.fan.cones = F.pieces;
  inv.b.fan = inv.l.fan;
  inv.l.per_cone.assign(F.pieces.size(), l);
  inv.b.per_cone.assign(F.pieces.size(), B);
  return inv;
}

DestabResult maximize_on_fan(const QVec& l, const QMat& B, const FormalFan& F) {
  return maximize_on_fan(uniform_invariant(l, B, F), F);
}

bool convexity_check(const NumericalInvariant& inv, const ConeMorphism& gamma, int samples,
                     unsigned long seed) {
  if (gamma.cols() != 2) throw Error("DimensionMismatch", "expected a 2-dimensional segment");
  QVec v1 = to_qvec(gamma.column(0));
  QVec v2 = to_qvec(gamma.column(1));
  int piece = -1;
  for (size_t i = 0; i < inv.l.fan.cones.size(); ++i)
    if (inv.l.fan.cones[i].contains(v1) && inv.l.fan.cones[i].contains(v2)) {
      piece = static_cast<int>(i);
      break;
    }
  if (piece < 0) throw Error("OutsideSupport", "segment not contained in one piece");
  const QVec& lv = inv.l.per_cone[piece];
  const QMat& bf = inv.b.per_cone[piece];
  Rat b1 = eval_form(bf, v1, v1), b2 = eval_form(bf, v2, v2), c12 = eval_form(bf, v1, v2);
  if (b1 <= 0 || b2 <= 0 || (c12 < 0 && c12 * c12 >= b1 * b2))
    throw Error("OutsideU", "form vanishes somewhere on the segment");

  // Non-constancy: mu at the endpoints and the midpoint direction.
  MuValue m1 = mu_value(dot(lv, v1), b1);
  MuValue m2 = mu_value(dot(lv, v2), b2);
  QVec mid = add(v1, v2);
  MuValue mm = mu_value(dot(lv, mid), eval_form(bf, mid, mid));
  if (compare_mu(m1, m2) == 0 && compare_mu(m1, mm) == 0) return false;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(0, 64);
  auto point = [&](const Rat& t) { return add(scale(1 - t, v1), scale(t, v2)); };
  for (int s = 0; s < samples; ++s) {
    Rat t1 = rat(num(rng), 65), t3 = rat(num(rng), 65);
    if (t1 == t3) continue;
    QVec p1 = point(std::min(t1, t3)), p3 = point(std::max(t1, t3));
    Rat lb1 = eval_form(bf, p1, p1), lb3 = eval_form(bf, p3, p3);
    Rat ll1 = dot(lv, p1), ll3 = dot(lv, p3);
    if (ll1 <= 0 || ll3 <= 0) continue;  // the convex-upward claim applies on {mu > 0}
    // Midpoint inequality for mu = l/sqrt(b) reduces to b(p1,p3) <= sqrt(b1 b3).
    Rat c = eval_form(bf, p1, p3);
    if (c > 0 && c * c > lb1 * lb3) return false;
  }
  return true;
}

}  // namespace instab
