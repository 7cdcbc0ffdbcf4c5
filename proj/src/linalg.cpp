#include "ncert/linalg.hpp"

#include <algorithm>
#include <optional>

#include "ncert/errors.hpp"

namespace ncert::linalg {

namespace {

// Determinant by cofactor expansion along the first active row; `rows` and
// `cols` are 0-based index lists of the active submatrix.
Int cofactor_det_rec(const IMatrix& m, const std::vector<int>& rows,
                     std::vector<int>& cols) {
  const size_t k = rows.size();
  if (k == 0) return 1;
  if (k == 1) return m.at(rows[0], cols[0]);
  if (k == 2) {
    return m.at(rows[0], cols[0]) * m.at(rows[1], cols[1]) -
           m.at(rows[0], cols[1]) * m.at(rows[1], cols[0]);
  }
  Int acc = 0;
  const std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (size_t j = 0; j < k; ++j) {
    const Int& pivot = m.at(rows[0], cols[j]);
    if (pivot == 0) continue;
    const int removed = cols[j];
    cols.erase(cols.begin() + static_cast<long>(j));
    const Int sub = cofactor_det_rec(m, sub_rows, cols);
    cols.insert(cols.begin() + static_cast<long>(j), removed);
    if (j % 2 == 0) {
      acc += pivot * sub;
    } else {
      acc -= pivot * sub;
    }
  }
  return acc;
}

Int cofactor_det(const IMatrix& m, std::vector<int> rows,
                 std::vector<int> cols) {
  return cofactor_det_rec(m, rows, cols);
}

std::vector<int> iota_indices(int n) {
  std::vector<int> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i;
  return v;
}

Int bareiss_det(IMatrix w) {
  const int n = w.rows();
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i) {
      if (w.at(i, k) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(w.at(k, j), w.at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        w.at(i, j) =
            exact_div(w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j), prev);
      }
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  return sign * w.at(n - 1, n - 1);
}

IMatrix cofactor_adjugate(const IMatrix& m) {
  const int n = m.rows();
  IMatrix adj(n, n);
  const std::vector<int> all = iota_indices(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> rows = all;
    rows.erase(rows.begin() + i);
    for (int j = 0; j < n; ++j) {
      std::vector<int> cols = all;
      cols.erase(cols.begin() + j);
      Int c = cofactor_det(m, rows, cols);
      if ((i + j) % 2 != 0) c = -c;
      adj.at(j, i) = c;  // transposed cofactor
    }
  }
  return adj;
}

// Fraction-free Gauss-Jordan on [M | I]; yields det(M) * M^{-1} = adj(M) for
// nonsingular M. Returns nullopt on a zero pivot column (singular input).
std::optional<IMatrix> elimination_adjugate(const IMatrix& m) {
  const int n = m.rows();
  IMatrix w(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w.at(i, j) = m.at(i, j);
    w.at(i, n + i) = 1;
  }
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i) {
      if (w.at(i, k) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    if (piv != k) {
      for (int j = 0; j < 2 * n; ++j) std::swap(w.at(k, j), w.at(piv, j));
      sign = -sign;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      for (int j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        w.at(i, j) =
            exact_div(w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j), prev);
      }
      w.at(i, k) = 0;
    }
    prev = w.at(k, k);
  }
  // Left block is now det(PM) * I where P is the row permutation applied;
  // the augmented block equals det(PM) * M^{-1} = sign-corrected adjugate.
  IMatrix adj(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      adj.at(i, j) = sign > 0 ? w.at(i, n + j) : -w.at(i, n + j);
    }
  }
  return adj;
}

void require_square(const IMatrix& m, const char* op) {
  if (!m.is_square()) {
    throw PreconditionError(std::string(op) + ": matrix must be square");
  }
}

// Validates a 1-based strictly ascending index set within [1, n].
void require_ascending_set(const std::vector<int>& s, int n, const char* what) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > n) {
      throw PreconditionError(std::string(what) + ": index out of range");
    }
    if (i > 0 && s[i] <= s[i - 1]) {
      throw PreconditionError(std::string(what) +
                              ": indices must be strictly ascending");
    }
  }
}

// Parity of the two-line permutation sending the concatenated top row to the
// concatenated bottom row; both rows enumerate [n] exactly once (1-based).
int two_line_sign(const std::vector<int>& top, const std::vector<int>& bottom) {
  const size_t n = top.size();
  std::vector<int> pi(n, 0);
  for (size_t t = 0; t < n; ++t) {
    pi[static_cast<size_t>(top[t] - 1)] = bottom[t] - 1;
  }
  int inversions = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (pi[i] > pi[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

// Enumerates all ascending |size|-subsets of the (sorted ascending) pool,
// invoking fn on each.
template <typename Fn>
void for_each_subset(const std::vector<int>& pool, size_t size, Fn&& fn) {
  std::vector<int> chosen;
  chosen.reserve(size);
  auto rec = [&](auto&& self, size_t start) -> void {
    if (chosen.size() == size) {
      fn(chosen);
      return;
    }
    const size_t needed = size - chosen.size();
    for (size_t i = start; i + needed <= pool.size(); ++i) {
      chosen.push_back(pool[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

Int det(const IMatrix& m) {
  require_square(m, "det");
  const int n = m.rows();
  if (n == 0) return 1;
  if (n <= 4) return cofactor_det(m, iota_indices(n), iota_indices(n));
  return bareiss_det(m);
}

IMatrix adjugate(const IMatrix& m) {
  require_square(m, "adjugate");
  const int n = m.rows();
  if (n == 0) return m;
  if (n <= 8) return cofactor_adjugate(m);
  if (auto adj = elimination_adjugate(m)) return *adj;
  return cofactor_adjugate(m);  // singular input: elimination has no pivot
}

Int minor_det(const IMatrix& m, const std::vector<int>& s,
              const std::vector<int>& t) {
  if (s.size() != t.size()) {
    throw PreconditionError("minor_det: row and column sets differ in size");
  }
  require_ascending_set(s, m.rows(), "minor_det rows");
  require_ascending_set(t, m.cols(), "minor_det cols");
  return det(m.submatrix(s, t));
}

Int first_minor(const IMatrix& m, int i, int j) {
  require_square(m, "first_minor");
  const int n = m.rows();
  if (i < 1 || i > n || j < 1 || j > n) {
    throw PreconditionError("first_minor: index out of range");
  }
  std::vector<int> rows, cols;
  rows.reserve(static_cast<size_t>(n) - 1);
  cols.reserve(static_cast<size_t>(n) - 1);
  for (int t = 1; t <= n; ++t) {
    if (t != i) rows.push_back(t);
    if (t != j) cols.push_back(t);
  }
  return det(m.submatrix(rows, cols));
}

Int laplace_det(const IMatrix& m,
                const std::vector<std::vector<int>>& row_partition) {
  require_square(m, "laplace_det");
  const int n = m.rows();

  std::vector<std::vector<int>> blocks = row_partition;
  std::vector<bool> seen(static_cast<size_t>(n), false);
  size_t covered = 0;
  for (auto& block : blocks) {
    if (block.empty()) {
      throw PreconditionError("laplace_det: empty partition block");
    }
    std::sort(block.begin(), block.end());
    for (int idx : block) {
      if (idx < 1 || idx > n || seen[static_cast<size_t>(idx - 1)]) {
        throw PreconditionError("laplace_det: blocks do not partition rows");
      }
      seen[static_cast<size_t>(idx - 1)] = true;
      ++covered;
    }
  }
  if (covered != static_cast<size_t>(n)) {
    throw PreconditionError("laplace_det: blocks do not partition rows");
  }

  std::vector<int> top;
  top.reserve(static_cast<size_t>(n));
  for (const auto& block : blocks) {
    top.insert(top.end(), block.begin(), block.end());
  }

  Int total = 0;
  std::vector<std::vector<int>> chosen(blocks.size());
  std::vector<int> available = iota_indices(n);
  for (int& v : available) ++v;  // 1-based column pool

  auto rec = [&](auto&& self, size_t bi, std::vector<int> pool) -> void {
    if (bi == blocks.size()) {
      std::vector<int> bottom;
      bottom.reserve(static_cast<size_t>(n));
      for (const auto& t : chosen) bottom.insert(bottom.end(), t.begin(), t.end());
      Int term = two_line_sign(top, bottom);
      for (size_t b = 0; b < blocks.size(); ++b) {
        term *= minor_det(m, blocks[b], chosen[b]);
      }
      total += term;
      return;
    }
    for_each_subset(pool, blocks[bi].size(), [&](const std::vector<int>& t) {
      chosen[bi] = t;
      std::vector<int> rest;
      rest.reserve(pool.size() - t.size());
      std::set_difference(pool.begin(), pool.end(), t.begin(), t.end(),
                          std::back_inserter(rest));
      self(self, bi + 1, std::move(rest));
    });
  };
  rec(rec, 0, available);
  return total;
}

Int cauchy_binet(const IMatrix& a, const IMatrix& b) {
  const int m = a.rows();
  const int n = a.cols();
  if (b.rows() != n || b.cols() != m) {
    throw PreconditionError("cauchy_binet: B must be the reversed shape of A");
  }
  if (m > n) {
    throw PreconditionError("cauchy_binet: requires rows(A) <= cols(A)");
  }
  std::vector<int> full(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) full[static_cast<size_t>(i)] = i + 1;
  std::vector<int> pool(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i + 1;

  Int total = 0;
  for_each_subset(pool, static_cast<size_t>(m), [&](const std::vector<int>& s) {
    total += minor_det(a, full, s) * minor_det(b, s, full);
  });
  return total;
}

IMatrix deleted_block_product(const IMatrix& p) {
  require_square(p, "deleted_block_product");
  const int n = p.rows();
  if (n < 1) throw PreconditionError("deleted_block_product: empty matrix");
  const IMatrix q = adjugate(p);

  std::vector<int> all(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i + 1;
  const std::vector<int> tail(all.begin() + 1, all.end());

  const IMatrix left = p.submatrix(all, tail);   // first column deleted
  const IMatrix right = q.submatrix(tail, all);  // first row deleted
  const IMatrix product = left * right;

  IMatrix expected = det(p) * IMatrix::identity(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      expected.at(i, j) -= p.at(i, 0) * q.at(0, j);
    }
  }
  if (product != expected) {
    throw ConsistencyError(
        "deleted_block_product: identity violated (library bug)");
  }
  return product;
}

std::pair<Int, Int> row_op_minor_identity(const std::vector<Int>& a,
                                          const IMatrix& b) {
  const int n = static_cast<int>(a.size());
  if (n < 2) throw PreconditionError("row_op_minor_identity: need length >= 2");
  if (b.rows() != n || b.cols() != n - 1) {
    throw PreconditionError("row_op_minor_identity: B must be n x (n-1)");
  }

  IMatrix banded(n - 1, n);
  for (int i = 0; i < n - 1; ++i) {
    banded.at(i, i) = -a[static_cast<size_t>(n - 1)];
    banded.at(i, n - 1) = a[static_cast<size_t>(i)];
  }
  const Int lhs = det(banded * b);

  IMatrix c(n, n);
  for (int i = 0; i < n; ++i) {
    c.at(i, 0) = a[static_cast<size_t>(i)];
    for (int j = 0; j < n - 1; ++j) c.at(i, j + 1) = b.at(i, j);
  }
  const Int rhs = pow_ui(a[static_cast<size_t>(n - 1)],
                         static_cast<unsigned long>(n - 2)) *
                  det(c);
  return {lhs, rhs};
}

std::vector<Int> wedge(const IMatrix& omega) {
  const int n = omega.rows();
  if (omega.cols() != n - 1) {
    throw PreconditionError("wedge: matrix must be n x (n-1)");
  }
  std::vector<int> cols(static_cast<size_t>(n - 1));
  for (int j = 0; j < n - 1; ++j) cols[static_cast<size_t>(j)] = j + 1;

  std::vector<Int> result(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    std::vector<int> rows;
    rows.reserve(static_cast<size_t>(n) - 1);
    for (int t = 1; t <= n; ++t) {
      if (t != i) rows.push_back(t);
    }
    Int minor = det(omega.submatrix(rows, cols));
    if ((n - i) % 2 != 0) minor = -minor;
    result[static_cast<size_t>(i - 1)] = minor;
  }
  return result;
}

std::pair<Int, Int> compound_identity(const IMatrix& a,
                                      const std::vector<int>& rows,
                                      const std::vector<int>& cols) {
  require_square(a, "compound_identity");
  const int n = a.rows();
  if (n < 3) throw PreconditionError("compound_identity: need n >= 3");
  if (rows.size() != static_cast<size_t>(n - 2) ||
      cols.size() != static_cast<size_t>(n - 2)) {
    throw PreconditionError("compound_identity: index sets must have size n-2");
  }
  require_ascending_set(rows, n, "compound_identity rows");
  require_ascending_set(cols, n, "compound_identity cols");

  auto complement = [n](const std::vector<int>& s) {
    std::vector<int> out;
    size_t pos = 0;
    for (int t = 1; t <= n; ++t) {
      if (pos < s.size() && s[pos] == t) {
        ++pos;
      } else {
        out.push_back(t);
      }
    }
    return out;
  };
  const std::vector<int> krows = complement(rows);
  const std::vector<int> lcols = complement(cols);

  IMatrix minors(n - 2, n - 2);
  for (int s = 0; s < n - 2; ++s) {
    for (int t = 0; t < n - 2; ++t) {
      minors.at(s, t) = first_minor(a, rows[static_cast<size_t>(s)],
                                    cols[static_cast<size_t>(t)]);
    }
  }
  const Int lhs = det(minors);
  const Int rhs = pow_ui(det(a), static_cast<unsigned long>(n - 3)) *
                  det(a.submatrix(krows, lcols));
  return {lhs, rhs};
}

std::pair<Int, Int> conjugation_minor_identity(const IMatrix& a,
                                               const IMatrix& p) {
  require_square(a, "conjugation_minor_identity");
  require_square(p, "conjugation_minor_identity");
  const int n = a.rows();
  if (p.rows() != n) {
    throw PreconditionError("conjugation_minor_identity: shape mismatch");
  }
  if (n < 3) throw PreconditionError("conjugation_minor_identity: need n >= 3");
  if (det(p) != 1) {
    throw PreconditionError("conjugation_minor_identity: det P must be 1");
  }

  const IMatrix btilde = adjugate(p) * a * p;  // P^{-1} A P since det P = 1

  // u = wedge of the Krylov block [p1, A p1, ..., A^{n-2} p1].
  IMatrix krylov_u(n, n - 1);
  IMatrix col(n, 1);
  for (int i = 0; i < n; ++i) col.at(i, 0) = p.at(i, 0);
  for (int t = 0; t < n - 1; ++t) {
    for (int i = 0; i < n; ++i) krylov_u.at(i, t) = col.at(i, 0);
    if (t + 1 < n - 1) col = a * col;
  }
  const std::vector<Int> u = wedge(krylov_u);

  // w = wedge of the Krylov block [q, B q, ..., B^{n-3} q] in the trailing
  // (n-1) x (n-1) block B of btilde, with q its first-column tail.
  IMatrix bblk(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    for (int j = 0; j < n - 1; ++j) bblk.at(i, j) = btilde.at(i + 1, j + 1);
  }
  IMatrix qcol(n - 1, 1);
  for (int i = 0; i < n - 1; ++i) qcol.at(i, 0) = btilde.at(i + 1, 0);
  IMatrix krylov_w(n - 1, n - 2);
  for (int t = 0; t < n - 2; ++t) {
    for (int i = 0; i < n - 1; ++i) krylov_w.at(i, t) = qcol.at(i, 0);
    if (t + 1 < n - 2) qcol = bblk * qcol;
  }
  const std::vector<Int> w = wedge(krylov_w);

  IMatrix lhs_m(n + 1, n + 1);
  for (int j = 0; j < n; ++j) lhs_m.at(0, j + 1) = u[static_cast<size_t>(j)];
  for (int i = 0; i < n; ++i) {
    lhs_m.at(i + 1, 0) = p.at(i, 0);
    for (int j = 0; j < n; ++j) lhs_m.at(i + 1, j + 1) = a.at(i, j);
  }

  IMatrix rhs_m(n, n);
  for (int j = 0; j < n - 1; ++j) rhs_m.at(0, j + 1) = w[static_cast<size_t>(j)];
  for (int i = 0; i < n - 1; ++i) {
    rhs_m.at(i + 1, 0) = btilde.at(i + 1, 0);
    for (int j = 0; j < n - 1; ++j) rhs_m.at(i + 1, j + 1) = bblk.at(i, j);
  }
  return {det(lhs_m), det(rhs_m)};
}

std::vector<Int> char_poly(const IMatrix& m) {
  require_square(m, "char_poly");
  const int d = m.rows();
  std::vector<Int> coeffs;
  coeffs.reserve(static_cast<size_t>(d) + 1);
  coeffs.push_back(1);
  IMatrix acc(d, d);
  for (int k = 1; k <= d; ++k) {
    // acc <- M * acc + c_{k-1} * I, then c_k = -tr(M * acc) / k.
    acc = m * acc;
    for (int i = 0; i < d; ++i) acc.at(i, i) += coeffs.back();
    const IMatrix prod = m * acc;
    Int trace = 0;
    for (int i = 0; i < d; ++i) trace += prod.at(i, i);
    coeffs.push_back(exact_div(-trace, Int(k)));
  }
  return coeffs;
}

}  // namespace ncert::linalg
