#pragma once

// Exact integer and rational linear algebra: matrices, Hermite normal form,
// and subgroups of Z^n ("lattices") kept in canonical form.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gm {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<T> row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
  }
  std::vector<T> col_vector(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += a(i, k) * b(k, j);
      }
    return p;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

/// gcd of the absolute values of the entries; 0 only for the zero vector.
Integer content(std::span<const Integer> v);

Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

/// Exact inverse over the integers, or nullopt when |det| != 1.
std::optional<IntMatrix> integer_inverse(const IntMatrix& m);

RatMatrix to_rational(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Basis of the rational null space {x : m x = 0}; empty iff m is injective.
std::vector<RatVector> rat_kernel(const RatMatrix& m);

/// Stack the rows of `top` above the rows of `bottom`.
IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom);

/// A subgroup of Z^n. The basis is always the row-style Hermite normal form of
/// the generators: pivots strictly increasing to the right, positive, and the
/// entries above each pivot reduced into [0, pivot). Two Lattice values are the
/// same subgroup iff they compare equal.
class Lattice {
 public:
  /// The zero subgroup of Z^0; placeholder for default construction.
  Lattice() = default;
  static Lattice zero(std::size_t ambient_rank);
  static Lattice full(std::size_t ambient_rank);

  std::size_t ambient_rank() const noexcept { return basis_.cols(); }
  std::size_t rank() const noexcept { return basis_.rows(); }
  const IntMatrix& basis() const noexcept { return basis_; }
  IntVector basis_vector(std::size_t i) const { return basis_.row_vector(i); }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Integer coordinates of v in the basis, or nullopt if v is not a member.
  std::optional<IntVector> coordinates(std::span<const Integer> v) const;
  bool contains(std::span<const Integer> v) const { return coordinates(v).has_value(); }
  bool contains(const Lattice& other) const;

  std::string str() const;

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }
  /// Deterministic total order: by pivot columns, then entries.
  friend bool operator<(const Lattice& a, const Lattice& b);

 private:
  friend Lattice hnf(const IntMatrix& generators);
  explicit Lattice(IntMatrix basis);
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Lattice generated by the rows of `generators`.
Lattice hnf(const IntMatrix& generators);
Lattice lattice_from_vectors(const std::vector<IntVector>& generators, std::size_t ambient_rank);

/// Smallest saturated lattice of the same rank containing l.
Lattice saturate(const Lattice& l);
bool is_saturated(const Lattice& l);

Lattice intersect(const Lattice& a, const Lattice& b);
Lattice join(const Lattice& a, const Lattice& b);

/// Integer solutions of m x = 0, as a lattice in Z^{m.cols()}.
Lattice integer_kernel(const IntMatrix& m);

/// (sup : sub). nullopt stands for an infinite index (rank drop).
/// Throws NotASubgroup when sub is not contained in sup.
std::optional<Integer> index(const Lattice& sub, const Lattice& sup);

/// Smallest-norm-ish deterministic y with det[[p0, p1], [y0, y1]] = 1 for a
/// primitive p in Z^2.
IntVector complete_basis_2d(std::span<const Integer> p);

Integer det2(std::span<const Integer> a, std::span<const Integer> b);

std::string to_string(std::span<const Integer> v);
std::string to_string(std::span<const Rational> v);
std::string to_string(const IntMatrix& m);

}  // namespace gm
