#include "ncert/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "ncert/errors.hpp"

namespace ncert {

namespace {

void check_same_shape(const IMatrix& a, const IMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw PreconditionError(std::string(op) + ": shape mismatch");
  }
}

}  // namespace

IMatrix::IMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw PreconditionError("IMatrix: negative shape");
  a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), Int(0));
}

IMatrix IMatrix::identity(int n) {
  IMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMatrix IMatrix::from_rows(
    std::initializer_list<std::initializer_list<long>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  IMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) {
      throw PreconditionError("from_rows: ragged row lengths");
    }
    int j = 0;
    for (long v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

const Int& IMatrix::entry(int i, int j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_) {
    throw PreconditionError("entry: index out of range");
  }
  return at(i - 1, j - 1);
}

void IMatrix::set_entry(int i, int j, Int v) {
  if (i < 1 || i > rows_ || j < 1 || j > cols_) {
    throw PreconditionError("set_entry: index out of range");
  }
  at(i - 1, j - 1) = std::move(v);
}

IMatrix IMatrix::submatrix(const std::vector<int>& rows,
                           const std::vector<int>& cols) const {
  IMatrix s(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 1 || rows[i] > rows_) {
      throw PreconditionError("submatrix: row index out of range");
    }
    for (size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 1 || cols[j] > cols_) {
        throw PreconditionError("submatrix: column index out of range");
      }
      s.at(static_cast<int>(i), static_cast<int>(j)) =
          at(rows[i] - 1, cols[j] - 1);
    }
  }
  return s;
}

IMatrix IMatrix::transpose() const {
  IMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

IMatrix IMatrix::pow(unsigned long e) const {
  if (!is_square()) throw PreconditionError("pow: matrix must be square");
  IMatrix result = identity(rows_);
  IMatrix base = *this;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1UL;
    if (e > 0) base = base * base;
  }
  return result;
}

IMatrix operator+(const IMatrix& a, const IMatrix& b) {
  check_same_shape(a, b, "operator+");
  IMatrix r(a.rows_, a.cols_);
  for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
  return r;
}

IMatrix operator-(const IMatrix& a, const IMatrix& b) {
  check_same_shape(a, b, "operator-");
  IMatrix r(a.rows_, a.cols_);
  for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
  return r;
}

IMatrix operator*(const IMatrix& a, const IMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("operator*: shape mismatch");
  IMatrix r(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int k = 0; k < a.cols_; ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols_; ++j) {
        if (b.at(k, j) != 0) r.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return r;
}

IMatrix operator*(const Int& c, const IMatrix& a) {
  IMatrix r(a.rows_, a.cols_);
  for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = c * a.a_[i];
  return r;
}

IMatrix IMatrix::operator-() const { return Int(-1) * (*this); }

std::string IMatrix::to_string() const {
  std::vector<std::string> cells;
  cells.reserve(a_.size());
  size_t width = 0;
  for (const Int& v : a_) {
    cells.push_back(v.get_str());
    width = std::max(width, cells.back().size());
  }
  std::ostringstream out;
  for (int i = 0; i < rows_; ++i) {
    out << '[';
    for (int j = 0; j < cols_; ++j) {
      const std::string& c = cells[static_cast<size_t>(i) * cols_ + j];
      out << std::string(width - c.size(), ' ') << c;
      if (j + 1 < cols_) out << ' ';
    }
    out << "]\n";
  }
  return out.str();
}

}  // namespace ncert
