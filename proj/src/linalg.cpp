#include "instab/linalg.hpp"

#include <sstream>

namespace instab {

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Rat r(s);
      r.canonicalize();
      return r;
    }
    Int p(s.substr(0, slash)), q(s.substr(slash + 1));
    return rat(p, q);
  } catch (const std::invalid_argument&) {
    throw Error("BadRational", "cannot parse '" + s + "'");
  }
}

std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string vec_str(const QVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << rat_str(v[i]);
  os << ")";
  return os.str();
}

std::string vec_str(const ZVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

QVec to_qvec(const ZVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

ZVec num_scaled(const QVec& v) {
  Int lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  ZVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i].get_num() * (lcm / v[i].get_den());
  return r;
}

ZVec primitive(const ZVec& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) throw Error("ZeroVector", "zero vector has no primitive representative");
  ZVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(const ZVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "dot");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const ZVec& a, const QVec& b) { return dot(to_qvec(a), b); }

Int dot(const ZVec& a, const ZVec& b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "dot");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

QVec add(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "add");
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

ZVec add(const ZVec& a, const ZVec& b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "add");
  ZVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec scale(const Rat& c, const QVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

QVec neg(const QVec& v) { return scale(rat(-1), v); }

ZVec neg(const ZVec& v) {
  ZVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

QVec mat_vec(const QMat& M, const QVec& x) {
  QVec y(M.size());
  for (size_t i = 0; i < M.size(); ++i) y[i] = dot(M[i], x);
  return y;
}

ZVec mat_vec(const ZMat& M, const ZVec& x) {
  ZVec y(M.size());
  for (size_t i = 0; i < M.size(); ++i) y[i] = dot(M[i], x);
  return y;
}

QMat transpose(const QMat& M) {
  if (M.empty()) return {};
  QMat T(M[0].size(), QVec(M.size()));
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < M[i].size(); ++j) T[j][i] = M[i][j];
  return T;
}

std::vector<int> rref(QMat& M) {
  std::vector<int> pivots;
  if (M.empty()) return pivots;
  size_t rows = M.size(), cols = M[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && M[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(M[r], M[p]);
    Rat inv = 1 / M[r][c];
    for (size_t j = c; j < cols; ++j) M[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      Rat f = M[i][c];
      for (size_t j = c; j < cols; ++j) M[i][j] -= f * M[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

int rank(const QMat& M) {
  QMat A = M;
  return static_cast<int>(rref(A).size());
}

int rank(const ZMat& M) {
  QMat A;
  A.reserve(M.size());
  for (const auto& row : M) A.push_back(to_qvec(row));
  return rank(A);
}

ZMat nullspace(const QMat& M) {
  if (M.empty()) return {};
  size_t cols = M[0].size();
  QMat A = M;
  std::vector<int> piv = rref(A);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  ZMat basis;
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_piv[free_c]) continue;
    QVec v(cols, rat(0));
    v[free_c] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -A[i][free_c];
    basis.push_back(primitive(num_scaled(v)));
  }
  return basis;
}

ZMat nullspace(const ZMat& M) {
  QMat A;
  A.reserve(M.size());
  for (const auto& row : M) A.push_back(to_qvec(row));
  return nullspace(A);
}

std::optional<QVec> solve(const QMat& A, const QVec& b) {
  if (A.size() != b.size()) throw Error("DimensionMismatch", "solve");
  if (A.empty()) return QVec{};
  size_t cols = A[0].size();
  QMat aug = A;
  for (size_t i = 0; i < A.size(); ++i) aug[i].push_back(b[i]);
  std::vector<int> piv = rref(aug);
  if (!piv.empty() && piv.back() == static_cast<int>(cols)) return std::nullopt;
  QVec x(cols, rat(0));
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][cols];
  return x;
}

std::optional<QMat> inverse(const QMat& A) {
  size_t n = A.size();
  QMat aug = A;
  for (size_t i = 0; i < n; ++i) {
    if (A[i].size() != n) throw Error("DimensionMismatch", "inverse of non-square matrix");
    for (size_t j = 0; j < n; ++j) aug[i].push_back(rat(i == j ? 1 : 0));
  }
  std::vector<int> piv = rref(aug);
  if (piv.size() != n) return std::nullopt;
  QMat inv(n, QVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

Rat det(const QMat& A) {
  size_t n = A.size();
  QMat M = A;
  Rat d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && M[p][c] == 0) ++p;
    if (p == n) return rat(0);
    if (p != c) {
      std::swap(M[p], M[c]);
      d = -d;
    }
    d *= M[c][c];
    Rat inv = 1 / M[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      Rat f = M[i][c] * inv;
      if (f == 0) continue;
      for (size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
    }
  }
  return d;
}

bool positive_definite(const QMat& A) {
  size_t n = A.size();
  for (size_t k = 1; k <= n; ++k) {
    QMat minor(k, QVec(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) minor[i][j] = A[i][j];
    if (det(minor) <= 0) return false;
  }
  return true;
}

QMat q_of(const ZMat& M) {
  QMat A;
  A.reserve(M.size());
  for (const auto& row : M) A.push_back(to_qvec(row));
  return A;
}

QMat mat_mul(const QMat& A, const QMat& B) {
  if (A.empty() || B.empty()) return {};
  size_t n = A.size(), m = B[0].size(), k = B.size();
  QMat C(n, QVec(m, rat(0)));
  for (size_t i = 0; i < n; ++i) {
    if (A[i].size() != k) throw Error("DimensionMismatch", "mat_mul");
    for (size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    }
  }
  return C;
}

}  // namespace instab
