#pragma once

// Integer/Rational scalars (GMP via boost::multiprecision) and the Eigen aliases used everywhere.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bratteli {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Edge multiplicities. Products and powers are taken in Integer.
using IncidenceMatrix = Matrix<std::int64_t>;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_zero(const Integer& x) { return x == 0; }
inline bool is_zero(const Rational& x) { return x == 0; }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
Integer pow(const Integer& base, unsigned exponent);
Rational pow(const Rational& base, int exponent);

// "p/q", or "p" when q = 1.
std::string to_string(const Integer& x);
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q" with optional surrounding blanks. Throws Error(input).
Rational parse_rational(std::string_view text);

template <typename Scalar>
Matrix<Rational> to_rational(const Matrix<Scalar>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

inline Matrix<Integer> to_integer(const IncidenceMatrix& m) {
  Matrix<Integer> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Integer(m(i, j));
  return out;
}

// Inverse of to_integer; throws Error(unsupported) when an entry leaves int64.
IncidenceMatrix to_incidence(const Matrix<Integer>& m);

}  // namespace bratteli
