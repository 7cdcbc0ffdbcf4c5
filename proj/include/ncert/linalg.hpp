#pragma once

#include <utility>
#include <vector>

#include "ncert/matrix.hpp"

namespace ncert::linalg {

/// Exact determinant. Cofactor expansion for dimension <= 4, fraction-free
/// (Bareiss) elimination with row pivoting beyond.
Int det(const IMatrix& m);

/// Adjugate (transposed cofactor matrix): M * adjugate(M) = det(M) * I.
/// Cofactor construction for dimension <= 8; fraction-free Gauss-Jordan
/// elimination otherwise (cofactor fallback when a zero pivot column makes
/// the elimination route impossible).
IMatrix adjugate(const IMatrix& m);

/// Determinant of the submatrix on 1-based ascending index sets S (rows) and
/// T (columns); |S| = |T| required.
Int minor_det(const IMatrix& m, const std::vector<int>& s,
              const std::vector<int>& t);

/// First minor: determinant after deleting row i and column j (1-based).
/// Unsigned (no cofactor sign).
Int first_minor(const IMatrix& m, int i, int j);

/// Complete expansion of det(M) along an ordered partition S_1..S_r of the
/// row indices: sums, over all column partitions T_1..T_r with matching
/// block sizes, the signed products of block minors. Equals det(M).
Int laplace_det(const IMatrix& m,
                const std::vector<std::vector<int>>& row_partition);

/// For A (m x n) and B (n x m) with m <= n: the sum over all ascending
/// column selections S of det(A[:,S]) * det(B[S,:]). Equals det(A*B).
Int cauchy_binet(const IMatrix& a, const IMatrix& b);

/// For square P with Q = adjugate(P): returns P with its first column
/// deleted times Q with its first row deleted, and verifies the product
/// equals det(P)*I - p1*q1 (first column of P times first row of Q).
IMatrix deleted_block_product(const IMatrix& p);

/// Both sides of the banded row-operation identity: for a of length n and
/// B (n x (n-1)), the (n-1) x n matrix A' with diagonal -a_n and last column
/// (a_1..a_{n-1}) satisfies det(A'*B) = a_n^{n-2} * det([a | B]).
/// Returns (det(A'*B), a_n^{n-2} * det([a | B])).
std::pair<Int, Int> row_op_minor_identity(const std::vector<Int>& a,
                                          const IMatrix& b);

/// Signed maximal minors of an n x (n-1) matrix: component i (1-based) is
/// (-1)^{n-i} times the minor deleting row i. Acts on column vectors as
/// v -> det([omega | v]).
std::vector<Int> wedge(const IMatrix& omega);

/// Both sides of the compound-determinant identity: for ascending row/column
/// sets I, J of size n-2 with ascending complements {k1,k2}, {l1,l2}, the
/// determinant of the (n-2) x (n-2) matrix of first minors (A with row i_s,
/// column j_t deleted) equals det(A)^{n-3} times the complementary 2x2
/// minor on rows {k1,k2}, columns {l1,l2}. Returns (lhs, rhs).
std::pair<Int, Int> compound_identity(const IMatrix& a,
                                      const std::vector<int>& rows,
                                      const std::vector<int>& cols);

/// Both sides of the conjugation-minor identity for A (n x n, n >= 3) and
/// P with det P = 1. With B~ = P^{-1} A P, p the first column of P, q the
/// subdiagonal part of the first column of B~ and B the trailing block:
///   lhs = det of the (n+1) x (n+1) border [[0, u], [p, A]],
///         u = wedge([p, Ap, ..., A^{n-2}p]);
///   rhs = det of the n x n border [[0, w], [q, B]],
///         w = wedge([q, Bq, ..., B^{n-3}q]).
/// The identity states lhs = -rhs; both values are returned unmodified.
std::pair<Int, Int> conjugation_minor_identity(const IMatrix& a,
                                               const IMatrix& p);

/// Characteristic polynomial coefficients, highest power first, so the
/// result {1, c1, ..., cd} encodes X^d + c1 X^{d-1} + ... + cd. Computed by
/// the trace recurrence with exact integer divisions.
std::vector<Int> char_poly(const IMatrix& m);

}  // namespace ncert::linalg
