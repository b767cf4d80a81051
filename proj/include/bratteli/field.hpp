#pragma once

// Real number fields Q(λ) and their elements in the power basis 1, λ, ..., λ^{d-1}.
// A FieldElement with a null field is a rational constant and mixes with any field,
// which is what lets Eigen write Scalar(0) and Scalar(1).

#include "bratteli/algebraic.hpp"
#include "bratteli/number.hpp"

#include <memory>
#include <string>
#include <vector>

namespace bratteli {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
 public:
  // nullptr when the generator is rational (the field is Q).
  static FieldPtr make(const AlgebraicNumber& generator);

  const AlgebraicNumber& generator() const { return gen_; }
  int degree() const { return gen_.degree(); }
  const Polynomial<Rational>& modulus() const { return modulus_; }
  bool same_as(const NumberField& other) const;

  std::vector<Rational> reduce(const Polynomial<Rational>& p) const;
  std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
  std::vector<Rational> inverse(const std::vector<Rational>& a) const;
  int sign(const std::vector<Rational>& a) const;
  Interval enclose(const std::vector<Rational>& a, const Rational& width) const;

 private:
  explicit NumberField(const AlgebraicNumber& g);
  AlgebraicNumber gen_;
  Polynomial<Rational> modulus_;
  Interval tight_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

class FieldElement {
 public:
  FieldElement() : c_{Rational(0)} {}
  FieldElement(int v) : c_{Rational(v)} {}  // NOLINT: implicit by design (Eigen literals)
  FieldElement(long v) : c_{Rational(v)} {}  // NOLINT
  FieldElement(const Integer& v) : c_{Rational(v)} {}  // NOLINT
  FieldElement(const Rational& v) : c_{v} {}  // NOLINT
  FieldElement(FieldPtr f, std::vector<Rational> coords);

  static FieldElement generator(const FieldPtr& f);

  const FieldPtr& field() const { return f_; }
  int degree() const { return f_ ? f_->degree() : 1; }
  Rational coord(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  std::vector<Rational> coords(std::size_t dim) const;
  const std::vector<Rational>& raw() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational to_rational() const;
  int sign() const;
  Interval enclose(const Rational& width) const;
  double approx() const;
  // "p/q" or "(c0 + c1*λ + ...)/q".
  std::string to_string() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  FieldElement& operator/=(const FieldElement& b) { return *this = *this / b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) { return (a - b).is_zero(); }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
  friend bool operator<(const FieldElement& a, const FieldElement& b) { return (b - a).sign() > 0; }
  friend bool operator>(const FieldElement& a, const FieldElement& b) { return b < a; }
  friend bool operator<=(const FieldElement& a, const FieldElement& b) { return !(b < a); }
  friend bool operator>=(const FieldElement& a, const FieldElement& b) { return !(a < b); }

 private:
  FieldPtr f_;
  std::vector<Rational> c_;  // length degree() when f_ is set, else 1
};

inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
FieldElement pow(const FieldElement& x, int e);
FieldElement abs(const FieldElement& x);
// The field both operands live in; throws Error(unsupported_field) when they differ.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);
// Lift a rational constant into f (no-op for elements already in f).
FieldElement lift(const FieldElement& x, const FieldPtr& f);
// Integer floor of a real element.
Integer floor(const FieldElement& x);

}  // namespace bratteli

namespace Eigen {
template <>
struct NumTraits<bratteli::FieldElement> : GenericNumTraits<bratteli::FieldElement> {
  using Real = bratteli::FieldElement;
  using NonInteger = bratteli::FieldElement;
  using Literal = bratteli::FieldElement;
  using Nested = bratteli::FieldElement;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 40,
    MulCost = 120
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
