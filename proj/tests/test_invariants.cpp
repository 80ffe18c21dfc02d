#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "instab/invariants.hpp"

using namespace instab;
using namespace instab::testing;

namespace {

Fan quadrant_fan() { return {2, {mk_cone(2, {{1, 0}, {0, 1}})}}; }

// |x| on the complete fan of the line: x on R>=0, -x on R<=0.
PLClass abs_class() {
  Fan f{1, {mk_cone(1, {{1}}), mk_cone(1, {{-1}})}};
  return {f, {qv({1}), qv({-1})}};
}

}  // namespace

TEST_CASE("piecewise evaluation") {
  PLClass l{quadrant_fan(), {qv({1, 2})}};
  validate_pl(l);
  CHECK(eval_pl(l, qv({1, 2})) == 5);

  PQClass b{quadrant_fan(), {identity_q(2)}};
  validate_pq(b);
  CHECK(eval_pq(b, qv({1, 2})) == 5);

  PLClass a = abs_class();
  validate_pl(a);
  CHECK(eval_pl(a, qv({-3})) == 3);
  CHECK(eval_pl(a, qv({4})) == 4);

  CHECK_THROWS_AS(eval_pl(l, qv({-1, 0})), Error);
}

TEST_CASE("incompatible class data is rejected") {
  Fan f{2, {mk_cone(2, {{1, 0}, {1, 1}}), mk_cone(2, {{1, 1}, {0, 1}})}};
  PLClass bad{f, {qv({1, 0}), qv({0, 2})}};  // disagree on the shared ray (1,1)
  CHECK_THROWS_AS(validate_pl(bad), Error);
  PLClass good{f, {qv({1, 0}), qv({0, 1})}};  // both give 1 on (1,1)
  validate_pl(good);
  CHECK(eval_pl(good, qv({2, 2})) == 2);
}

TEST_CASE("homogeneity of evaluation") {
  std::mt19937_64 rng(31);
  PLClass a = abs_class();
  PQClass b{quadrant_fan(), {identity_q(2)}};
  for (int trial = 0; trial < 100; ++trial) {
    Rat lam = rand_rat(rng, 1, 5, 3);
    QVec x = {rand_rat(rng, -4, 4, 3)};
    CHECK(eval_pl(a, scale(lam, x)) == lam * eval_pl(a, x));
    QVec y = {rand_rat(rng, 0, 4, 3), rand_rat(rng, 0, 4, 3)};
    CHECK(eval_pq(b, scale(lam, y)) == lam * lam * eval_pq(b, y));
  }
}

TEST_CASE("mu values compare exactly") {
  NumericalInvariant inv{{quadrant_fan(), {qv({1, 2})}}, {quadrant_fan(), {identity_q(2)}}};
  MuValue v = mu(inv, qv({1, 2}));
  CHECK(v.L == 5);
  CHECK(v.B == 5);
  CHECK(v.sign == 1);

  // Scale invariance of the ratio.
  MuValue w = mu(inv, qv({2, 4}));
  CHECK(compare_mu(v, w) == 0);

  NumericalInvariant zero{{quadrant_fan(), {qv({0, 0})}}, {quadrant_fan(), {identity_q(2)}}};
  CHECK(mu(zero, qv({3, 1})).sign == 0);

  CHECK(compare_mu(mu_value(5, 5), mu_value(1, 1)) == 1);   // sqrt5 > 1
  CHECK(compare_mu(mu_value(2, 4), mu_value(1, 1)) == 0);   // both 1
  CHECK(compare_mu(mu_value(-1, 1), mu_value(0, 7)) == -1); // sign rule
}

TEST_CASE("positive definiteness on the support") {
  Fan f = quadrant_fan();
  CHECK(is_positive_definite({f, {identity_q(2)}}));
  CHECK_FALSE(is_positive_definite({f, {qm({{1, -1}, {-1, 1}})}}));  // (x1-x2)^2
  QMat xy = {qv({0, 0}), qv({0, 0})};
  xy[0][1] = rat(1, 2);
  xy[1][0] = rat(1, 2);
  CHECK_FALSE(is_positive_definite({f, {xy}}));  // x1 x2 vanishes on the axes
}

TEST_CASE("convexity of piecewise-linear classes across walls") {
  // -|x| passes the convex-upward test; |x| fails.
  PLClass a = abs_class();
  PLClass na = a;
  na.per_cone = {qv({-1}), qv({1})};
  CHECK(is_convex_pl(na));
  CHECK_FALSE(is_convex_pl(a));

  PLClass single{quadrant_fan(), {qv({3, -2})}};
  CHECK(is_convex_pl(single));
}

TEST_CASE("spherical lengths from the quadratic class") {
  PQClass b{quadrant_fan(), {identity_q(2)}};
  double right = spherical_length(b, {zm({{1, 0}, {0, 1}})});
  CHECK(std::abs(right - std::acos(0.0)) < 1e-12);

  Fan xline{2, {mk_cone(2, {{1, 0}})}};
  PQClass bx{xline, {identity_q(2)}};
  CHECK(spherical_length(bx, {zm({{1, 2}, {0, 0}})}) == 0.0);

  Fan wedge{2, {mk_cone(2, {{1, 0}, {1, 1}})}};
  PQClass bw{wedge, {identity_q(2)}};
  double eighth = spherical_length(bw, {zm({{1, 1}, {0, 1}})});
  CHECK(std::abs(eighth - std::acos(1.0 / std::sqrt(2.0))) < 1e-12);

  // Symmetry in the two boundary rays.
  double swapped = spherical_length(bw, {zm({{1, 1}, {1, 0}})});
  CHECK(std::abs(eighth - swapped) < 1e-12);
}

namespace {

// dim(n) = n+1, wsum = n(n+1)/2, wsqsum = n(n+1)(2n+1)/6: the rotation action
// on the projective line.
std::vector<FutakiSample> line_rotation_samples() {
  std::vector<FutakiSample> out;
  for (long n = 1; n <= 6; ++n) {
    Rat N = rat(n);
    out.push_back({N, N + 1, N * (N + 1) / 2, N * (N + 1) * (2 * N + 1) / 6});
  }
  return out;
}

}  // namespace

TEST_CASE("coefficient fit on the rotation dataset") {
  TautCoeffs c = futaki_fit(line_rotation_samples(), 1);
  CHECK(c.a0 == 1);
  CHECK(c.a1 == 1);
  CHECK(c.d0 == 1);
  CHECK(c.d1 == rat(1, 2));
  CHECK(c.q0 == 2);
  CHECK(c.q1 == 1);

  auto [l, b] = futaki_classes(c);
  CHECK(l == rat(1, 2));
  CHECK(b == 1);
}

TEST_CASE("fit of a weightless configuration vanishes") {
  std::vector<FutakiSample> samples;
  for (long n = 1; n <= 5; ++n) {
    Rat N = rat(n);
    samples.push_back({N, N + 1, 0, 0});
  }
  TautCoeffs c = futaki_fit(samples, 1);
  CHECK(c.d0 == 0);
  CHECK(c.d1 == 0);
  CHECK(c.q0 == 0);
  CHECK(c.q1 == 0);
  auto [l, b] = futaki_classes(c);
  CHECK(l == 0);
  CHECK(b == 0);
  CHECK(normalized_futaki(c).value == 0.0);
}

TEST_CASE("twisting the polarization") {
  TautCoeffs c = futaki_fit(line_rotation_samples(), 1);
  TautCoeffs t = twist(c, 1);
  CHECK(t.d0 == 2);
  CHECK(t.d1 == rat(3, 2));
  CHECK(t.q0 == 5);
  auto [l, b] = futaki_classes(t);
  CHECK(l == rat(1, 2));
  CHECK(b == 1);

  TautCoeffs t0 = twist(c, 0);
  CHECK(t0.d0 == c.d0);
  CHECK(t0.q1 == c.q1);

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    Rat m1 = rand_rat(rng, -3, 3, 4), m2 = rand_rat(rng, -3, 3, 4);
    TautCoeffs ab = twist(twist(c, m1), m2);
    TautCoeffs sum = twist(c, m1 + m2);
    CHECK(ab.d0 == sum.d0);
    CHECK(ab.d1 == sum.d1);
    CHECK(ab.q0 == sum.q0);
    CHECK(ab.q1 == sum.q1);
  }
}

TEST_CASE("normalized invariant of the rotation dataset") {
  TautCoeffs c = futaki_fit(line_rotation_samples(), 1);
  NormalizedFutaki nf = normalized_futaki(c);
  CHECK(nf.d1t == rat(-1, 2));
  CHECK(nf.q0t == 1);
  CHECK(std::abs(nf.value - 0.5) < 1e-12);
}
