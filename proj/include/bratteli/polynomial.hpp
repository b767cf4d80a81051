#pragma once

// Dense univariate polynomials over an exact scalar (Integer, Rational, FieldElement).
// Coefficients are stored low degree first and kept trimmed.

#include "bratteli/number.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace bratteli {

namespace detail {
// Unqualified call so ADL finds is_zero for scalars declared later.
template <typename S>
bool scalar_zero(const S& s) {
  return is_zero(s);
}
}  // namespace detail

template <typename Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Scalar> c) : c_(c) { trim(); }
  explicit Polynomial(std::vector<Scalar> c) : c_(std::move(c)) { trim(); }

  static Polynomial constant(const Scalar& c) { return Polynomial(std::vector<Scalar>{c}); }
  static Polynomial monomial(const Scalar& c, std::size_t degree) {
    std::vector<Scalar> v(degree + 1, Scalar(0));
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar(0); }
  const Scalar& leading() const { return c_.back(); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!detail::scalar_zero(Scalar(a.c_[i] - b.c_[i]))) return false;
    return true;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<Scalar> r(a.c_);
    for (auto& x : r) x = -x;
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Scalar& s, const Polynomial& a) {
    std::vector<Scalar> r(a.c_);
    for (auto& x : r) x = s * x;
    return Polynomial(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && detail::scalar_zero(c_.back())) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

// Euclidean division over a field scalar: a = q*b + r with deg r < deg b.
template <typename Scalar>
std::pair<Polynomial<Scalar>, Polynomial<Scalar>> divmod(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  std::vector<Scalar> r = a.coeffs();
  const int db = b.degree();
  if (db < 0) throw std::domain_error("polynomial division by zero");
  if (a.degree() < db) return {Polynomial<Scalar>(), a};
  std::vector<Scalar> q(static_cast<std::size_t>(a.degree() - db + 1), Scalar(0));
  const Scalar inv = Scalar(1) / b.leading();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Scalar t = r[static_cast<std::size_t>(k + db)] * inv;
    q[static_cast<std::size_t>(k)] = t;
    if (detail::scalar_zero(t)) continue;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(k + j);
      r[idx] = r[idx] - t * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial<Scalar>(std::move(q)), Polynomial<Scalar>(std::move(r))};
}

template <typename Scalar>
Polynomial<Scalar> operator%(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  return divmod(a, b).second;
}
template <typename Scalar>
Polynomial<Scalar> operator/(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  return divmod(a, b).first;
}

template <typename Scalar>
Polynomial<Scalar> monic(const Polynomial<Scalar>& p) {
  if (p.is_zero()) return p;
  return (Scalar(1) / p.leading()) * p;
}

// Monic gcd; gcd(0, 0) = 0.
template <typename Scalar>
Polynomial<Scalar> gcd(Polynomial<Scalar> a, Polynomial<Scalar> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

template <typename Scalar>
Polynomial<Scalar> derivative(const Polynomial<Scalar>& p) {
  if (p.degree() < 1) return {};
  std::vector<Scalar> r(static_cast<std::size_t>(p.degree()));
  for (std::size_t i = 1; i < p.coeffs().size(); ++i) r[i - 1] = Scalar(static_cast<long>(i)) * p.coeffs()[i];
  return Polynomial<Scalar>(std::move(r));
}

// Horner evaluation at a point of any ring containing the coefficients.
template <typename Scalar, typename T>
T evaluate(const Polynomial<Scalar>& p, const T& x) {
  T acc = T(0);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + T(*it);
  return acc;
}

// Substitute a polynomial for the variable: p(q(y)).
template <typename Scalar, typename Target>
Polynomial<Target> compose(const Polynomial<Scalar>& p, const Polynomial<Target>& q) {
  Polynomial<Target> acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * q + Polynomial<Target>::constant(Target(*it));
  return acc;
}

template <typename From, typename To>
Polynomial<To> convert(const Polynomial<From>& p) {
  std::vector<To> c;
  c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) c.push_back(To(x));
  return Polynomial<To>(std::move(c));
}

// Integer polynomial helpers.
Integer content(const Polynomial<Integer>& p);
// Clears denominators and content; leading coefficient made positive.
Polynomial<Integer> primitive_part(const Polynomial<Rational>& p);
Polynomial<Integer> primitive_part(const Polynomial<Integer>& p);
// Divides out repeated factors: p / gcd(p, p'), primitive.
Polynomial<Integer> squarefree_part(const Polynomial<Integer>& p);

// "x^2 - 3*x + 1" style rendering.
std::string to_string(const Polynomial<Integer>& p, const std::string& var = "x");
std::string to_string(const Polynomial<Rational>& p, const std::string& var = "x");

}  // namespace bratteli
