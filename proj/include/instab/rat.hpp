#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace instab {

using Rat = mpq_class;
using Int = mpz_class;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;
using ZVec = std::vector<Int>;
using ZMat = std::vector<ZVec>;

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// mpq_class(p, q) does not reduce the fraction; always go through here.
inline Rat rat(long p, long q = 1) {
  if (q == 0) throw Error("ZeroDenominator", "rational with denominator 0");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

inline Rat rat(const Int& p, const Int& q) {
  if (q == 0) throw Error("ZeroDenominator", "rational with denominator 0");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

// Parses "p" or "p/q" with optional sign.
Rat parse_rat(const std::string& s);

// Formats as "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rat& r);

std::string vec_str(const QVec& v);
std::string vec_str(const ZVec& v);

inline int sgn(const Rat& r) { return sgn(r.get_num()); }

QVec to_qvec(const ZVec& v);
ZVec num_scaled(const QVec& v);  // clears denominators, returns integer vector

// Divides by the gcd of the entries; throws ZeroVector on the zero vector.
ZVec primitive(const ZVec& v);

bool is_zero(const QVec& v);
bool is_zero(const ZVec& v);

Rat dot(const QVec& a, const QVec& b);
Rat dot(const ZVec& a, const QVec& b);
Int dot(const ZVec& a, const ZVec& b);
QVec add(const QVec& a, const QVec& b);
ZVec add(const ZVec& a, const ZVec& b);
QVec scale(const Rat& c, const QVec& v);
QVec neg(const QVec& v);
ZVec neg(const ZVec& v);

// y = M x  (M given row-major, size rows x cols)
QVec mat_vec(const QMat& M, const QVec& x);
ZVec mat_vec(const ZMat& M, const ZVec& x);
QMat transpose(const QMat& M);

}  // namespace instab
