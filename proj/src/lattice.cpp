#include "graphmanifold/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "graphmanifold/errors.hpp"

namespace gm {

namespace {

using Row = IntVector;

// row_a <- s*row_a + t*row_b ; row_b <- u*row_a + v*row_b (old values).
void combine_rows(Row& ra, Row& rb, const Integer& s, const Integer& t, const Integer& u,
                  const Integer& v) {
  for (std::size_t k = 0; k < ra.size(); ++k) {
    Integer na = s * ra[k] + t * rb[k];
    Integer nb = u * ra[k] + v * rb[k];
    ra[k] = std::move(na);
    rb[k] = std::move(nb);
  }
}

void axpy(Row& dst, const Integer& q, const Row& src) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= q * src[k];
}

std::vector<Row> hnf_rows(std::vector<Row> rows, std::size_t ncols) {
  const std::size_t m = rows.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (rows[i][c] == 0) continue;
      if (rows[r][c] == 0) {
        std::swap(rows[r], rows[i]);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[r][c].get_mpz_t(),
                 rows[i][c].get_mpz_t());
      Integer a_g = rows[r][c] / g;
      Integer b_g = rows[i][c] / g;
      // [[s, t], [-b/g, a/g]] has determinant 1.
      combine_rows(rows[r], rows[i], s, t, -b_g, a_g);
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i][c] == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (q != 0) axpy(rows[i], q, rows[r]);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace

Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(r, k), a(p, k));
    Rational inv = 1 / a(r, c);
    for (std::size_t k = 0; k < a.cols(); ++k) a(r, k) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t k = 0; k < a.cols(); ++k) a(i, k) -= f * a(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<IntMatrix> integer_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Integer det = determinant(m);
  if (det != 1 && det != -1) return std::nullopt;
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = Rational(m(i, j));
    aug(i, n + i) = 1;
  }
  rref(aug);
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& q = aug(i, n + j);
      if (q.get_den() != 1) throw InternalError("unimodular inverse produced a fraction");
      inv(i, j) = q.get_num();
    }
  return inv;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

std::vector<RatVector> rat_kernel(const RatMatrix& m) {
  RatMatrix a = m;
  auto pivots = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(a.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.rows() > 0 && bottom.rows() > 0 && top.cols() != bottom.cols())
    throw std::invalid_argument("stack: column mismatch");
  const std::size_t cols = top.rows() > 0 ? top.cols() : bottom.cols();
  IntMatrix s(top.rows() + bottom.rows(), cols);
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) s(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) s(top.rows() + i, j) = bottom(i, j);
  return s;
}

Lattice::Lattice(IntMatrix basis) : basis_(std::move(basis)) {
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    std::size_t c = 0;
    while (basis_(i, c) == 0) ++c;
    pivots_.push_back(c);
  }
}

Lattice Lattice::zero(std::size_t ambient_rank) { return hnf(IntMatrix(0, ambient_rank)); }

Lattice Lattice::full(std::size_t ambient_rank) { return hnf(IntMatrix::identity(ambient_rank)); }

std::optional<IntVector> Lattice::coordinates(std::span<const Integer> v) const {
  if (v.size() != ambient_rank()) throw std::invalid_argument("vector of the wrong ambient rank");
  IntVector residual(v.begin(), v.end());
  IntVector coords(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    const Integer& pivot = basis_(i, pivots_[i]);
    const Integer& x = residual[pivots_[i]];
    if (!mpz_divisible_p(x.get_mpz_t(), pivot.get_mpz_t())) return std::nullopt;
    coords[i] = x / pivot;
    if (coords[i] != 0)
      for (std::size_t k = 0; k < residual.size(); ++k) residual[k] -= coords[i] * basis_(i, k);
  }
  for (const auto& x : residual)
    if (x != 0) return std::nullopt;
  return coords;
}

bool Lattice::contains(const Lattice& other) const {
  if (other.ambient_rank() != ambient_rank()) return false;
  for (std::size_t i = 0; i < other.rank(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

std::string Lattice::str() const {
  std::ostringstream os;
  os << "span{";
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i) os << ", ";
    os << to_string(basis_.row(i));
  }
  os << "}";
  return os.str();
}

bool operator<(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) return a.ambient_rank() < b.ambient_rank();
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  if (a.pivots_ != b.pivots_) return a.pivots_ < b.pivots_;
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.ambient_rank(); ++j)
      if (a.basis_(i, j) != b.basis_(i, j)) return a.basis_(i, j) < b.basis_(i, j);
  return false;
}

Lattice hnf(const IntMatrix& generators) {
  std::vector<Row> rows;
  rows.reserve(generators.rows());
  for (std::size_t i = 0; i < generators.rows(); ++i) rows.push_back(generators.row_vector(i));
  rows = hnf_rows(std::move(rows), generators.cols());
  return Lattice(IntMatrix::from_rows(rows, generators.cols()));
}

Lattice lattice_from_vectors(const std::vector<IntVector>& generators, std::size_t ambient_rank) {
  return hnf(IntMatrix::from_rows(generators, ambient_rank));
}

Lattice integer_kernel(const IntMatrix& m) {
  // Row-reduce [m^T | I]: the rows whose left block vanishes carry, on the
  // right, a basis of the solution lattice.
  const std::size_t n = m.cols();
  const std::size_t k = m.rows();
  std::vector<Row> rows(n, Row(k + n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) rows[i][j] = m(j, i);
    rows[i][k + i] = 1;
  }
  rows = hnf_rows(std::move(rows), k + n);
  std::vector<Row> kernel;
  for (const auto& r : rows) {
    bool left_zero = std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k),
                                 [](const Integer& x) { return x == 0; });
    if (left_zero) kernel.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(k), r.end());
  }
  return lattice_from_vectors(kernel, n);
}

Lattice saturate(const Lattice& l) {
  if (l.rank() == 0 || l.rank() == l.ambient_rank()) {
    return l.rank() == 0 ? l : Lattice::full(l.ambient_rank());
  }
  Lattice orthogonal = integer_kernel(l.basis());
  return integer_kernel(orthogonal.basis());
}

bool is_saturated(const Lattice& l) { return saturate(l) == l; }

Lattice intersect(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw std::invalid_argument("intersect: ambient ranks differ");
  const std::size_t n = a.ambient_rank();
  if (a.rank() == 0 || b.rank() == 0) return Lattice::zero(n);
  // Relations x*A + y*B = 0 among the stacked bases.
  IntMatrix both = stack(a.basis(), b.basis());
  Lattice relations = integer_kernel(both.transpose());
  std::vector<Row> gens;
  for (std::size_t r = 0; r < relations.rank(); ++r) {
    Row v(n);
    for (std::size_t i = 0; i < a.rank(); ++i) {
      const Integer& x = relations.basis()(r, i);
      if (x == 0) continue;
      for (std::size_t k = 0; k < n; ++k) v[k] += x * a.basis()(i, k);
    }
    gens.push_back(std::move(v));
  }
  Lattice result = lattice_from_vectors(gens, n);
  if (is_saturated(a) && is_saturated(b) && !is_saturated(result))
    throw InternalError("intersection of saturated lattices is not saturated: " + result.str());
  return result;
}

Lattice join(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw std::invalid_argument("join: ambient ranks differ");
  return hnf(stack(a.basis(), b.basis()));
}

std::optional<Integer> index(const Lattice& sub, const Lattice& sup) {
  if (sub.ambient_rank() != sup.ambient_rank())
    throw std::invalid_argument("index: ambient ranks differ");
  IntMatrix coords(sub.rank(), sup.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto c = sup.coordinates(sub.basis().row(i));
    if (!c) throw NotASubgroup(sub.str() + " is not contained in " + sup.str());
    for (std::size_t j = 0; j < sup.rank(); ++j) coords(i, j) = (*c)[j];
  }
  if (sub.rank() != sup.rank()) return std::nullopt;
  return abs(determinant(coords));
}

Integer det2(std::span<const Integer> a, std::span<const Integer> b) {
  return a[0] * b[1] - a[1] * b[0];
}

IntVector complete_basis_2d(std::span<const Integer> p) {
  if (p.size() != 2) throw std::invalid_argument("complete_basis_2d expects a vector in Z^2");
  // p0*y1 - p1*y0 = 1  <=>  s*p0 + t*p1 = 1 with y = (-t, s).
  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p[0].get_mpz_t(), p[1].get_mpz_t());
  if (g != 1) throw std::invalid_argument("complete_basis_2d: vector is not primitive");
  return {-t, s};
}

std::string to_string(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string to_string(std::span<const Rational> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string to_string(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ",";
      s += m(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace gm
