#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "genformal/errors.hpp"
#include "genformal/scalar.hpp"

namespace genformal {

// Dense matrix over an exact ring (GQ or Poly). Field-only algorithms
// (elimination, kernels, inverses) are free functions restricted to GQ.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(int rows, int cols, const T& fill)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int r, int c) { return a_[r * cols_ + c]; }
  const T& operator()(int r, int c) const { return a_[r * cols_ + c]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix operator-() const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    conformable(o, true);
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    conformable(o, true);
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    require(cols_ == o.rows_, ErrorKind::NonconformableShapes,
            "matrix product shapes");
    Matrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& x = (*this)(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const T& y = o(k, j);
          if (!y.is_zero()) r(i, j) += x * y;
        }
      }
    return r;
  }
  Matrix operator*(const T& c) const {
    Matrix r(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    require((int)v.size() == cols_, ErrorKind::NonconformableShapes,
            "matrix-vector shapes");
    std::vector<T> r(rows_, T(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero() && !v[j].is_zero())
          r[i] += (*this)(i, j) * v[j];
    return r;
  }

  std::vector<T> col(int j) const {
    std::vector<T> r(rows_);
    for (int i = 0; i < rows_; ++i) r[i] = (*this)(i, j);
    return r;
  }
  void set_col(int j, const std::vector<T>& v) {
    require((int)v.size() == rows_, ErrorKind::NonconformableShapes, "column size");
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    Matrix r(nr, nc);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  void set_block(int r0, int c0, const Matrix& b) {
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  static Matrix hcat(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_ || a.cols_ == 0 || b.cols_ == 0,
            ErrorKind::NonconformableShapes, "hcat row counts");
    int rows = a.cols_ ? a.rows_ : b.rows_;
    Matrix r(rows, a.cols_ + b.cols_);
    if (a.cols_) r.set_block(0, 0, a);
    if (b.cols_) r.set_block(0, a.cols_, b);
    return r;
  }

 private:
  void conformable(const Matrix& o, bool same_shape) const {
    require(!same_shape || (rows_ == o.rows_ && cols_ == o.cols_),
            ErrorKind::NonconformableShapes, "matrix shapes differ");
  }
  int rows_, cols_;
  std::vector<T> a_;
};

using MatQ = Matrix<GQ>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(MatQ& m);
int rank(MatQ m);
// Columns form a basis of the kernel.
MatQ kernel_basis(const MatQ& m);
GQ det(MatQ m);
MatQ inverse(const MatQ& m);  // fails with BadArgument if singular

// Subspaces of Q(i)^n are represented by matrices whose columns span them.
// echelon_columns returns the canonical (column-reduced) basis, so equal
// subspaces yield identical matrices.
MatQ echelon_columns(const MatQ& span);
int subspace_dim(const MatQ& span);
bool subspace_contains(const MatQ& span, const std::vector<GQ>& v);
bool subspace_equal(const MatQ& a, const MatQ& b);
MatQ subspace_sum(const MatQ& a, const MatQ& b);
MatQ subspace_intersect(const MatQ& a, const MatQ& b);
// {x : a x in span(s)}
MatQ subspace_preimage(const MatQ& a, const MatQ& s);
MatQ image(const MatQ& a);
MatQ image_of_subspace(const MatQ& a, const MatQ& s);
// One solution of a x = b, if the system is consistent.
std::optional<std::vector<GQ>> solve_linear(const MatQ& a, const std::vector<GQ>& b);

}  // namespace genformal
