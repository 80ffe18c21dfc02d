#pragma once

#include "instab/cones.hpp"

namespace instab {

// Piecewise-linear class: one linear functional per maximal cone.
struct PLClass {
  Fan fan;
  std::vector<QVec> per_cone;
};

// Piecewise-quadratic class: one symmetric bilinear form per maximal cone.
struct PQClass {
  Fan fan;
  std::vector<QMat> per_cone;
};

struct NumericalInvariant {
  PLClass l;
  PQClass b;
};

// Exact carrier for values L / sqrt(B); comparisons never touch floats.
struct MuValue {
  int sign = 0;  // -1, 0, +1
  Rat L = 0;
  Rat B = 0;
  bool infinite = false;  // B = 0 with L != 0: the +/- infinity sentinels
  double float_view() const;
};

MuValue mu_value(const Rat& L, const Rat& B);
int compare_mu(const MuValue& a, const MuValue& b);
// Canonical key (sign, mu^2) for exact grouping by value.
std::pair<int, Rat> mu_key(const MuValue& v);

void validate_pl(const PLClass& l);  // throws IncompatibleClass
void validate_pq(const PQClass& b);

Rat eval_pl(const PLClass& l, const QVec& x);
Rat eval_pq(const PQClass& b, const QVec& x);
Rat eval_form(const QMat& B, const QVec& x, const QVec& y);

MuValue mu(const NumericalInvariant& inv, const QVec& x);

bool is_positive_definite(const PQClass& b);
bool is_convex_pl(const PLClass& l);

double spherical_length(const PQClass& b, const ConeMorphism& gamma);

// Donaldson-Futaki coefficient calculus on tautological expansions.
struct TautCoeffs {
  long r = 0;
  Rat a0, a1, d0, d1, q0, q1;
};

struct FutakiSample {
  Rat n, dim, wsum, wsqsum;
};

TautCoeffs futaki_fit(const std::vector<FutakiSample>& samples, long r);
std::pair<Rat, Rat> futaki_classes(const TautCoeffs& c);
TautCoeffs twist(const TautCoeffs& c, const Rat& m);
// Returns (d1_twisted, q0_twisted, float value) after twisting to d0 = 0.
struct NormalizedFutaki {
  Rat d1t, q0t;
  double value;
};
NormalizedFutaki normalized_futaki(const TautCoeffs& c);

}  // namespace instab
