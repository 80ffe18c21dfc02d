#include "instab/invariants.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace instab {

double MuValue::float_view() const {
  if (infinite)
    return sign > 0 ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
  if (B == 0) return 0.0;
  return L.get_d() / std::sqrt(B.get_d());
}

MuValue mu_value(const Rat& L, const Rat& B) {
  if (B < 0) throw Error("DegenerateB", "quadratic value must be nonnegative");
  MuValue v;
  v.L = L;
  v.B = B;
  v.sign = sgn(L);
  v.infinite = (B == 0 && L != 0);
  return v;
}

int compare_mu(const MuValue& a, const MuValue& b) {
  if (a.infinite || b.infinite) {
    int as = a.infinite ? a.sign * 2 : a.sign;
    int bs = b.infinite ? b.sign * 2 : b.sign;
    return as < bs ? -1 : as > bs ? 1 : 0;
  }
  if (a.sign != b.sign) return a.sign < b.sign ? -1 : 1;
  if (a.sign == 0) return 0;
  Rat lhs = a.L * a.L * b.B, rhs = b.L * b.L * a.B;
  if (lhs == rhs) return 0;
  return (lhs < rhs ? -1 : 1) * a.sign;
}

std::pair<int, Rat> mu_key(const MuValue& v) {
  if (v.infinite) return {v.sign * 2, rat(0)};
  if (v.sign == 0) return {0, rat(0)};
  return {v.sign, v.L * v.L / v.B};
}

namespace {

QVec interior_point(const RationalCone& c) {
  QVec x(c.ambient_dim(), rat(0));
  for (const auto& g : c.generators()) x = add(x, to_qvec(g.coords));
  return x;
}

void check_compat(const Fan& fan, size_t count,
                  const std::function<bool(size_t, size_t, const RationalCone&)>& agree) {
  if (fan.cones.size() != count)
    throw Error("IncompatibleClass", "one datum per maximal cone required");
  for (size_t i = 0; i < fan.cones.size(); ++i)
    for (size_t j = i + 1; j < fan.cones.size(); ++j) {
      RationalCone w = fan.cones[i].intersect(fan.cones[j]);
      if (w.is_zero()) continue;
      if (!agree(i, j, w))
        throw Error("IncompatibleClass", "per-cone data disagree on a shared face");
    }
}

}  // namespace

void validate_pl(const PLClass& l) {
  check_compat(l.fan, l.per_cone.size(), [&](size_t i, size_t j, const RationalCone& w) {
    for (const auto& g : w.generators()) {
      QVec x = to_qvec(g.coords);
      if (dot(l.per_cone[i], x) != dot(l.per_cone[j], x)) return false;
    }
    return true;
  });
}

Rat eval_form(const QMat& B, const QVec& x, const QVec& y) { return dot(x, mat_vec(B, y)); }

void validate_pq(const PQClass& b) {
  check_compat(b.fan, b.per_cone.size(), [&](size_t i, size_t j, const RationalCone& w) {
    const auto& gens = w.generators();
    for (size_t a = 0; a < gens.size(); ++a)
      for (size_t c = a; c < gens.size(); ++c) {
        QVec x = to_qvec(gens[a].coords), y = to_qvec(gens[c].coords);
        if (eval_form(b.per_cone[i], x, y) != eval_form(b.per_cone[j], x, y)) return false;
      }
    return true;
  });
}

namespace {

template <typename Eval>
Rat eval_piecewise(const Fan& fan, const QVec& x, Eval&& eval) {
  bool found = false;
  Rat value = 0;
  for (size_t i = 0; i < fan.cones.size(); ++i) {
    if (!fan.cones[i].contains(x)) continue;
    Rat v = eval(i);
    if (found && v != value)
      throw Error("IncompatibleClass", "per-cone data disagree at " + vec_str(x));
    value = v;
    found = true;
  }
  if (!found) throw Error("OutsideSupport", "point " + vec_str(x) + " outside the fan support");
  return value;
}

}  // namespace

Rat eval_pl(const PLClass& l, const QVec& x) {
  return eval_piecewise(l.fan, x, [&](size_t i) { return dot(l.per_cone[i], x); });
}

Rat eval_pq(const PQClass& b, const QVec& x) {
  return eval_piecewise(b.fan, x, [&](size_t i) { return eval_form(b.per_cone[i], x, x); });
}

MuValue mu(const NumericalInvariant& inv, const QVec& x) {
  if (is_zero(x)) throw Error("ZeroVector", "mu is undefined at the origin");
  return mu_value(eval_pl(inv.l, x), eval_pq(inv.b, x));
}

bool is_positive_definite(const PQClass& b) {
  for (size_t i = 0; i < b.fan.cones.size(); ++i) {
    const auto& cone = b.fan.cones[i];
    if (cone.is_zero()) continue;
    // Basis of the span: a maximal independent subset of the generators.
    QMat V;
    ZMat rows;
    for (const auto& g : cone.generators()) {
      ZMat probe = rows;
      probe.push_back(g.coords);
      if (rank(probe) > rank(rows)) {
        rows = probe;
        V.push_back(to_qvec(g.coords));
      }
    }
    size_t d = V.size();
    QMat Q(d, QVec(d));
    for (size_t a = 0; a < d; ++a)
      for (size_t c = 0; c < d; ++c) Q[a][c] = eval_form(b.per_cone[i], V[a], V[c]);
    if (!positive_definite(Q)) return false;
  }
  return true;
}

bool is_convex_pl(const PLClass& l) {
  validate_pl(l);
  const auto& cones = l.fan.cones;
  for (size_t i = 0; i < cones.size(); ++i)
    for (size_t j = i + 1; j < cones.size(); ++j) {
      RationalCone w = cones[i].intersect(cones[j]);
      if (w.dim() != cones[i].dim() - 1 || w.dim() != cones[j].dim() - 1) continue;
      QVec x = interior_point(cones[i]);
      QVec y = interior_point(cones[j]);
      Rat lx = dot(l.per_cone[i], x);
      Rat ly = dot(l.per_cone[j], y);
      Rat lxy;
      try {
        lxy = eval_pl(l, add(x, y));
      } catch (const Error& e) {
        if (e.code == "OutsideSupport")
          throw Error("NonConvexSupport", "midpoint across a wall left the support");
        throw;
      }
      if (lx + ly > lxy) return false;
    }
  return true;
}

double spherical_length(const PQClass& b, const ConeMorphism& gamma) {
  if (gamma.cols() != 2) throw Error("DimensionMismatch", "expected a 2-dimensional segment");
  QVec v1 = to_qvec(gamma.column(0));
  QVec v2 = to_qvec(gamma.column(1));
  if (is_zero(v1) || is_zero(v2)) throw Error("ZeroVector", "segment endpoints must be nonzero");
  const QMat* form = nullptr;
  for (size_t i = 0; i < b.fan.cones.size(); ++i)
    if (b.fan.cones[i].contains(v1) && b.fan.cones[i].contains(v2)) {
      form = &b.per_cone[i];
      break;
    }
  if (!form) throw Error("OutsideSupport", "segment not contained in one piece");
  Rat b1 = eval_form(*form, v1, v1);
  Rat b2 = eval_form(*form, v2, v2);
  Rat c = eval_form(*form, v1, v2);
  if (proj_points_equal(v1, v2)) {
    if (b1 <= 0) throw Error("NotPositiveDefinite", "form vanishes on the segment");
    return 0.0;
  }
  if (b1 <= 0 || b2 <= 0 || b1 * b2 - c * c <= 0)
    throw Error("NotPositiveDefinite", "form is not positive definite on the segment");
  double arg = c.get_d() / std::sqrt(b1.get_d() * b2.get_d());
  arg = std::min(1.0, std::max(-1.0, arg));
  return std::acos(arg);
}

namespace {

// Exact coefficients (low to high degree) of the interpolating polynomial.
QVec interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  size_t s = xs.size();
  QMat V(s, QVec(s));
  for (size_t i = 0; i < s; ++i) {
    Rat p = 1;
    for (size_t j = 0; j < s; ++j) {
      V[i][j] = p;
      p *= xs[i];
    }
  }
  auto sol = solve(V, ys);
  if (!sol) throw Error("DegreeOverflow", "sample degrees are not distinct");
  return *sol;
}

Rat coeff_at(const QVec& poly, long deg, long bound) {
  for (size_t i = bound + 1; i < poly.size(); ++i)
    if (poly[i] != 0)
      throw Error("DegreeOverflow", "sample data exceeds the expected polynomial degree");
  return deg < static_cast<long>(poly.size()) ? poly[deg] : rat(0);
}

Rat factorial(long n) {
  Rat f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TautCoeffs futaki_fit(const std::vector<FutakiSample>& samples, long r) {
  if (static_cast<long>(samples.size()) < r + 3)
    throw Error("DegreeOverflow", "need at least r+3 sample degrees");
  std::vector<Rat> xs, dims, wsums, wsqs;
  for (const auto& s : samples) {
    xs.push_back(s.n);
    dims.push_back(s.dim);
    wsums.push_back(s.wsum);
    wsqs.push_back(s.wsqsum);
  }
  QVec pd = interpolate(xs, dims);
  QVec pw = interpolate(xs, wsums);
  QVec pq = interpolate(xs, wsqs);
  TautCoeffs c;
  c.r = r;
  c.a0 = factorial(r) * coeff_at(pd, r, r);
  c.a1 = factorial(r - 1) * coeff_at(pd, r - 1, r);
  c.d0 = factorial(r + 1) * coeff_at(pw, r + 1, r + 1);
  c.d1 = factorial(r) * coeff_at(pw, r, r + 1);
  c.q0 = factorial(r + 2) * coeff_at(pq, r + 2, r + 2);
  c.q1 = factorial(r + 1) * coeff_at(pq, r + 1, r + 2);
  return c;
}

std::pair<Rat, Rat> futaki_classes(const TautCoeffs& c) {
  return {c.a1 * c.d0 - c.a0 * c.d1, c.a0 * c.a0 * c.q0 - c.a0 * c.d0 * c.d0};
}

TautCoeffs twist(const TautCoeffs& c, const Rat& m) {
  TautCoeffs t = c;
  t.d0 = c.d0 + m * c.a0;
  t.d1 = c.d1 + m * c.a1;
  t.q0 = c.q0 + 2 * m * c.d0 + m * m * c.a0;
  t.q1 = c.q1 + 2 * m * c.d1 + m * m * c.a1;
  return t;
}

NormalizedFutaki normalized_futaki(const TautCoeffs& c) {
  if (c.a0 <= 0) throw Error("DegenerateB", "degree coefficient a0 must be positive");
  TautCoeffs t = twist(c, -c.d0 / c.a0);
  NormalizedFutaki out;
  out.d1t = t.d1;
  out.q0t = t.q0;
  if (t.q0 == 0 && t.d1 == 0) {
    // trivial (product) configuration: no weight data at all
    out.value = 0.0;
    return out;
  }
  if (t.q0 <= 0) throw Error("DegenerateB", "twisted q0 must be positive");
  out.value = -t.d1.get_d() / std::sqrt(t.q0.get_d());
  return out;
}

}  // namespace instab
