#pragma once

#include <optional>

#include "instab/rat.hpp"

namespace instab {

// Row-reduces M in place; returns the pivot column indices.
std::vector<int> rref(QMat& M);

int rank(const QMat& M);
int rank(const ZMat& M);

// Basis of {x : M x = 0}, one integer vector per row.
ZMat nullspace(const QMat& M);
ZMat nullspace(const ZMat& M);

// One solution of A x = b, or nullopt when inconsistent.
std::optional<QVec> solve(const QMat& A, const QVec& b);

// Inverse of a square nonsingular matrix; nullopt when singular.
std::optional<QMat> inverse(const QMat& A);

Rat det(const QMat& A);

// Leading-principal-minor test for symmetric positive definiteness.
bool positive_definite(const QMat& A);

QMat q_of(const ZMat& M);
QMat mat_mul(const QMat& A, const QMat& B);

}  // namespace instab
