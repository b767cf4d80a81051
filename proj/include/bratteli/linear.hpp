#pragma once

// Exact dense linear algebra over a field scalar. Pivoting is "first nonzero":
// no magnitudes are compared, so it works for Rational and FieldElement alike.

#include "bratteli/number.hpp"
#include "bratteli/polynomial.hpp"

#include <optional>
#include <vector>

namespace bratteli {

// det(x I - A), monic, by Faddeev-LeVerrier.
template <typename Scalar>
Polynomial<Scalar> characteristic_polynomial(const Matrix<Scalar>& a) {
  const Eigen::Index n = a.rows();
  std::vector<Scalar> c(static_cast<std::size_t>(n + 1), Scalar(0));
  c[static_cast<std::size_t>(n)] = Scalar(1);
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    Matrix<Scalar> next = a * m;
    for (Eigen::Index i = 0; i < n; ++i) next(i, i) = next(i, i) + c[static_cast<std::size_t>(n - k + 1)];
    m = std::move(next);
    Matrix<Scalar> am = a * m;
    Scalar tr = Scalar(0);
    for (Eigen::Index i = 0; i < n; ++i) tr = tr + am(i, i);
    c[static_cast<std::size_t>(n - k)] = -tr / Scalar(static_cast<long>(k));
  }
  return Polynomial<Scalar>(std::move(c));
}

inline Polynomial<Integer> characteristic_polynomial(const Matrix<Integer>& a) {
  auto p = characteristic_polynomial(to_rational(a));
  std::vector<Integer> c;
  for (const auto& x : p.coeffs()) c.push_back(num(x));
  return Polynomial<Integer>(std::move(c));
}

// Reduced row echelon form in place; returns pivot columns.
template <typename Scalar>
std::vector<Eigen::Index> row_reduce(Matrix<Scalar>& a) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index p = row;
    while (p < a.rows() && is_zero(a(p, col))) ++p;
    if (p == a.rows()) continue;
    if (p != row) a.row(p).swap(a.row(row));
    const Scalar inv = Scalar(1) / a(row, col);
    for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) = a(row, j) * inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || is_zero(a(i, col))) continue;
      const Scalar f = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) = a(i, j) - f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Scalar>
std::size_t rank(Matrix<Scalar> a) {
  return row_reduce(a).size();
}

// Columns form a basis of {v : a v = 0}.
template <typename Scalar>
Matrix<Scalar> nullspace(Matrix<Scalar> a) {
  const auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(a.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    const auto f = free[k];
    basis(f, static_cast<Eigen::Index>(k)) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], static_cast<Eigen::Index>(k)) = -a(static_cast<Eigen::Index>(r), f);
  }
  return basis;
}

// Unique solution of a x = b, or nullopt when a is singular.
template <typename Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) return std::nullopt;
  Matrix<Scalar> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  const auto pivots = row_reduce(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
  return Vector<Scalar>(aug.col(n));
}

template <typename Scalar>
Matrix<Scalar> matrix_power(const Matrix<Scalar>& a, unsigned k) {
  Matrix<Scalar> r = Matrix<Scalar>::Identity(a.rows(), a.cols());
  Matrix<Scalar> b = a;
  while (k) {
    if (k & 1U) r = (r * b).eval();
    k >>= 1U;
    if (k) b = (b * b).eval();
  }
  return r;
}

}  // namespace bratteli
