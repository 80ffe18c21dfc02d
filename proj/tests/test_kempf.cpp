#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "instab/kempf.hpp"

using namespace instab;
using namespace instab::testing;

namespace {

// Exhaustive rational grid of directions with entries in [-bound, bound] and
// denominators <= den, restricted to a cone.
template <typename F>
void for_grid_rays(int dim, long bound, long den, const F& f) {
  std::vector<long> idx(dim, -bound * den);
  while (true) {
    QVec x;
    bool nonzero = false;
    for (long v : idx) {
      x.push_back(rat(v, den));
      nonzero |= v != 0;
    }
    if (nonzero) f(x);
    int i = 0;
    for (; i < dim; ++i) {
      if (idx[i] < bound * den) {
        ++idx[i];
        break;
      }
      idx[i] = -bound * den;
    }
    if (i == dim) break;
  }
}

MuValue grid_best(const QVec& l, const QMat& B, const RationalCone& C, long den) {
  MuValue best = mu_value(0, 1);
  for_grid_rays(C.ambient_dim(), 1, den, [&](const QVec& x) {
    if (!C.contains(x)) return;
    Rat Lv = dot(l, x);
    Rat Bv = eval_form(B, x, x);
    if (Bv == 0) return;
    MuValue v = mu_value(Lv, Bv);
    if (compare_mu(v, best) > 0) best = v;
  });
  return best;
}

}  // namespace

TEST_CASE("maximization over the standard quadrant") {
  auto quadrant = mk_cone(2, {{1, 0}, {0, 1}});
  QMat I = identity_q(2);

  auto interior = maximize_on_simplicial_cone(qv({1, 2}), I, quadrant);
  REQUIRE(interior.has_value());
  CHECK(interior->first.coords == zv({1, 2}));
  CHECK(interior->first == canonicalize_ray(zv({1, 2})));
  CHECK(compare_mu(interior->second, mu_value(5, 5)) == 0);

  auto face = maximize_on_simplicial_cone(qv({1, -1}), I, quadrant);
  REQUIRE(face.has_value());
  CHECK(face->first.coords == zv({1, 0}));
  CHECK(compare_mu(face->second, mu_value(1, 1)) == 0);

  auto none = maximize_on_simplicial_cone(qv({-1, -1}), I, quadrant);
  CHECK_FALSE(none.has_value());
}

TEST_CASE("fan maximization merges and deduplicates") {
  QMat I = identity_q(2);

  FormalFan half = formal_fan(2, {RationalCone::from_inequalities(2, {}, zm({{1, 1}}))});
  DestabResult r = maximize_on_fan(qv({1, 1}), I, half);
  CHECK(r.status == DestabResult::Status::Unstable);
  REQUIRE(r.argmax_rays.size() == 1);
  CHECK(r.argmax_rays[0].coords == zv({1, 1}));
  CHECK(compare_mu(r.value, mu_value(2, 2)) == 0);  // sqrt 2
  CHECK(r.unique);

  FormalFan rays = formal_fan(2, {mk_cone(2, {{1, 0}}), mk_cone(2, {{0, 1}})});
  DestabResult tie = maximize_on_fan(qv({1, 1}), I, rays);
  CHECK(tie.status == DestabResult::Status::Unstable);
  CHECK(tie.argmax_rays.size() == 2);
  CHECK_FALSE(tie.unique);
  CHECK(compare_mu(tie.value, mu_value(1, 1)) == 0);

  FormalFan quad = formal_fan(2, {mk_cone(2, {{1, 0}, {0, 1}})});
  DestabResult zero = maximize_on_fan(qv({0, 0}), I, quad);
  CHECK(zero.status == DestabResult::Status::SemistableNonPositive);
}

TEST_CASE("solver dominates a rational grid oracle") {
  std::mt19937_64 rng(41);
  QMat I = identity_q(2);
  auto quadrant = mk_cone(2, {{1, 0}, {0, 1}});
  auto wedge = mk_cone(2, {{1, 0}, {1, 2}});
  std::vector<RationalCone> cones = {quadrant, wedge};
  for (int trial = 0; trial < 20; ++trial) {
    QVec l = {rand_rat(rng, -3, 3, 2), rand_rat(rng, -3, 3, 2)};
    const auto& C = cones[trial % cones.size()];
    auto best = maximize_on_simplicial_cone(l, I, C);
    MuValue oracle = grid_best(l, I, C, 6);
    if (!best) {
      CHECK(compare_mu(oracle, mu_value(0, 1)) <= 0);
    } else {
      CHECK(compare_mu(best->second, oracle) >= 0);
      // Grid contains the primitive argmax directions up to bounded height.
      Rat Lv = dot(l, to_qvec(best->first.coords));
      Rat Bv = eval_form(I, to_qvec(best->first.coords), to_qvec(best->first.coords));
      CHECK(compare_mu(mu_value(Lv, Bv), best->second) == 0);
    }
  }
}

TEST_CASE("scaling the classes rescales the value but not the argmax") {
  auto quadrant = mk_cone(2, {{1, 0}, {0, 1}});
  QMat I = identity_q(2);
  QVec l = qv({1, 2});
  auto base = maximize_on_simplicial_cone(l, I, quadrant);
  auto twol = maximize_on_simplicial_cone(scale(2, l), I, quadrant);
  REQUIRE(base.has_value());
  REQUIRE(twol.has_value());
  CHECK(base->first == twol->first);
  // mu(2l) = 2 mu(l), so mu^2 = L^2/B quadruples.
  CHECK(twol->second.L * twol->second.L * base->second.B ==
        4 * base->second.L * base->second.L * twol->second.B);

  QMat fourI = identity_q(2);
  for (auto& row : fourI)
    for (auto& x : row) x *= 4;
  auto fourb = maximize_on_simplicial_cone(l, fourI, quadrant);
  REQUIRE(fourb.has_value());
  CHECK(fourb->first == base->first);
  // mu(4b) = mu/2: L'^2/B' = (L^2/B)/4.
  CHECK(4 * fourb->second.L * fourb->second.L * base->second.B ==
        base->second.L * base->second.L * fourb->second.B);
}

TEST_CASE("pointed covers split off lineality") {
  auto halfplane = RationalCone::from_inequalities(2, {}, zm({{1, 1}}));
  auto cover = pointed_simplicial_cover(halfplane);
  CHECK(cover.size() >= 2);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    QVec x = {rand_rat(rng, -3, 3, 4), rand_rat(rng, -3, 3, 4)};
    bool in_any = false;
    for (const auto& p : cover) {
      CHECK(p.strictly_convex());
      CHECK(p.is_simplicial());
      in_any = in_any || p.contains(x);
    }
    CHECK(in_any == halfplane.contains(x));
  }
}

TEST_CASE("subdivision independence of the fan result") {
  QMat I = identity_q(2);
  QVec l = qv({2, 1});
  FormalFan coarse = formal_fan(2, {mk_cone(2, {{1, 0}, {0, 1}})});
  FormalFan fine =
      formal_fan(2, {mk_cone(2, {{1, 0}, {1, 1}}), mk_cone(2, {{1, 1}, {0, 1}})});
  DestabResult a = maximize_on_fan(l, I, coarse);
  DestabResult b = maximize_on_fan(l, I, fine);
  CHECK(a.status == b.status);
  CHECK(compare_mu(a.value, b.value) == 0);
  REQUIRE(a.argmax_rays.size() == 1);
  REQUIRE(b.argmax_rays.size() == 1);
  CHECK(a.argmax_rays[0] == b.argmax_rays[0]);
}

TEST_CASE("convexity probe along rational segments") {
  Fan wedge{2, {mk_cone(2, {{1, 0}, {0, 1}})}};
  NumericalInvariant inv{{wedge, {qv({1, 2})}}, {wedge, {identity_q(2)}}};
  CHECK(convexity_check(inv, {zm({{1, 0}, {0, 1}})}, 50, 12345));

  NumericalInvariant flat{{wedge, {qv({0, 0})}}, {wedge, {identity_q(2)}}};
  CHECK_FALSE(convexity_check(flat, {zm({{1, 0}, {0, 1}})}, 50, 12345));

  Fan whole{2, {mk_cone(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}})}};
  QMat dg = qm({{1, 0}, {0, 0}});
  NumericalInvariant degen{{whole, {qv({0, 1})}}, {whole, {dg}}};
  CHECK_THROWS_AS(convexity_check(degen, {zm({{0, 0}, {1, 2}})}, 10, 1), Error);
}
