#pragma once

// Real algebraic numbers: irreducible primitive integer minimal polynomial plus a
// rational isolating interval. All decisions go through exact sign evaluations.

#include "bratteli/number.hpp"
#include "bratteli/polynomial.hpp"

#include <string>
#include <vector>

namespace bratteli {

// Closed rational interval. lo == hi encodes an exact point.
struct Interval {
  Rational lo, hi;
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  Rational width() const { return hi - lo; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& s, const Interval& a);

class SturmSequence {
 public:
  explicit SturmSequence(const Polynomial<Integer>& squarefree);
  int variations(const Rational& x) const;
  // Number of distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const;

 private:
  std::vector<Polynomial<Rational>> seq_;
};

// Every real root lies in (-B, B).
Rational root_bound(const Polynomial<Integer>& p);
int sign_at(const Polynomial<Integer>& p, const Rational& x);
// Ascending isolating intervals for the real roots of a squarefree polynomial.
// Intervals are either exact points or open (lo, hi) with p(lo) p(hi) < 0.
std::vector<Interval> isolate_real_roots(const Polynomial<Integer>& squarefree);

class AlgebraicNumber {
 public:
  AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}
  explicit AlgebraicNumber(const Rational& q);
  // m must be irreducible; (lo, hi) must contain exactly one root of m.
  static AlgebraicNumber from_interval(const Polynomial<Integer>& m, const Rational& lo, const Rational& hi);

  const Polynomial<Integer>& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  bool is_rational() const { return degree() == 1; }
  Rational to_rational() const;
  bool is_integer() const { return is_rational() && den(to_rational()) == 1; }
  // Index of the root among the real roots of minpoly, ascending from 0.
  int root_index() const { return index_; }
  const Interval& interval() const { return iv_; }
  // A sub-interval of width at most max_width still isolating the root.
  Interval refine(const Rational& max_width) const;
  double approx() const;
  // "x^2 - x - 1 @ [lo, hi]" or the rational value.
  std::string to_string() const;

  friend int compare(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) == 0; }
  friend bool operator<(const AlgebraicNumber& a, const AlgebraicNumber& b) { return compare(a, b) < 0; }

 private:
  Polynomial<Integer> minpoly_;
  Interval iv_;
  int index_ = 0;
};

// Irreducible factor of a squarefree integer polynomial vanishing at the root
// isolated by `iso`. Candidates come from high-precision complex roots; every
// candidate is verified exactly (divisibility plus a sign change on `iso`).
Polynomial<Integer> minimal_factor(const Polynomial<Integer>& squarefree, const Interval& iso);

// Largest real root of det(xI - M) for an integer matrix, as an AlgebraicNumber.
AlgebraicNumber perron_root(const Matrix<Integer>& m);

}  // namespace bratteli
