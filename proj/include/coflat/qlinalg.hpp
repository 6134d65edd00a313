#pragma once

#include "coflat/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace coflat {

/// Dense rational matrix, row-major. Exact Gauss-Jordan elimination gives
/// rank, kernel, solve and inverse without any numeric tolerance.
using QMatrix = std::vector<std::vector<Rational>>;
using QVector = std::vector<Rational>;

QMatrix q_identity(int n);
QMatrix q_zero(int rows, int cols);
QMatrix q_transpose(const QMatrix& a);
QMatrix q_mul(const QMatrix& a, const QMatrix& b);
QVector q_mul_vec(const QMatrix& a, const QVector& v);
QMatrix q_add(const QMatrix& a, const QMatrix& b);
QMatrix q_scaled(const QMatrix& a, const Rational& c);
bool q_is_zero(const QMatrix& a);

/// In-place reduced row echelon form; returns pivot columns in order.
std::vector<int> q_rref(QMatrix& a);

int q_rank(QMatrix a);

/// One solution of A x = b, if consistent.
std::optional<QVector> q_solve(const QMatrix& a, const QVector& b);

/// Basis of the right kernel of A.
std::vector<QVector> q_kernel(const QMatrix& a);

std::optional<QMatrix> q_inverse(const QMatrix& a);

/// Moore-Penrose-style left inverse (A^T A)^{-1} A^T of a full-column-rank
/// matrix; with a weight matrix W it becomes (A^T W A)^{-1} A^T W, another
/// left inverse used to spot-check invariance statements.
std::optional<QMatrix> q_left_inverse(const QMatrix& a);
std::optional<QMatrix> q_weighted_left_inverse(const QMatrix& a, const QVector& diag_weights);

} // namespace coflat
