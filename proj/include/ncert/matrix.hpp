#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "ncert/int.hpp"

namespace ncert {

/// Dense matrix over arbitrary-precision integers.
///
/// Indexing convention: the public accessors entry()/set_entry() and every
/// row/column index appearing in a public function signature are 1-based;
/// storage and the at() accessors used by implementation loops are 0-based.
class IMatrix {
 public:
  IMatrix() = default;
  IMatrix(int rows, int cols);  // zero-filled
  static IMatrix identity(int n);
  /// Test/driver convenience: build from row lists of machine integers.
  static IMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  /// 1-based access (public convention).
  const Int& entry(int i, int j) const;
  void set_entry(int i, int j, Int v);

  /// 0-based access (implementation loops).
  Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  /// Submatrix on the given 1-based row/column index lists (order preserved).
  IMatrix submatrix(const std::vector<int>& rows,
                    const std::vector<int>& cols) const;

  IMatrix transpose() const;
  IMatrix pow(unsigned long e) const;  // square matrices only

  bool operator==(const IMatrix& o) const = default;
  friend IMatrix operator+(const IMatrix& a, const IMatrix& b);
  friend IMatrix operator-(const IMatrix& a, const IMatrix& b);
  friend IMatrix operator*(const IMatrix& a, const IMatrix& b);
  friend IMatrix operator*(const Int& c, const IMatrix& a);
  IMatrix operator-() const;

  /// Multi-line human-readable rendering (right-aligned columns).
  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> a_;
};

}  // namespace ncert
