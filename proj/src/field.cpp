#include "bratteli/field.hpp"

#include "bratteli/error.hpp"

namespace bratteli {

namespace {
const Rational kTight = Rational(1, Integer(1) << 64);

Interval horner(const std::vector<Rational>& c, const Interval& x) {
  Interval acc{0, 0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Interval{*it, *it};
  return acc;
}
}  // namespace

NumberField::NumberField(const AlgebraicNumber& g)
    : gen_(g), modulus_(monic(convert<Integer, Rational>(g.minpoly()))), tight_(g.refine(kTight)) {}

FieldPtr NumberField::make(const AlgebraicNumber& g) {
  if (g.is_rational()) return nullptr;
  return FieldPtr(new NumberField(g));
}

bool NumberField::same_as(const NumberField& o) const {
  return this == &o || (gen_.minpoly() == o.gen_.minpoly() && gen_.root_index() == o.gen_.root_index());
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a || !b) return !a && !b;
  return a->same_as(*b);
}

std::vector<Rational> NumberField::reduce(const Polynomial<Rational>& p) const {
  auto r = p % modulus_;
  std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational(0));
  for (std::size_t i = 0; i < r.coeffs().size(); ++i) c[i] = r.coeffs()[i];
  return c;
}

std::vector<Rational> NumberField::multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  return reduce(Polynomial<Rational>(a) * Polynomial<Rational>(b));
}

std::vector<Rational> NumberField::inverse(const std::vector<Rational>& a) const {
  Polynomial<Rational> r0 = modulus_, r1(a), s0, s1 = Polynomial<Rational>::constant(1);
  if (r1.is_zero()) throw Error(ErrorKind::precondition, "division by zero in number field");
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant because the modulus is irreducible
  return reduce((Rational(1) / r0.leading()) * s0);
}

Interval NumberField::enclose(const std::vector<Rational>& a, const Rational& width) const {
  Interval iv = tight_;
  for (;;) {
    Interval e = horner(a, iv);
    if (e.width() <= width) return e;
    iv = gen_.refine(iv.width() / Rational(Integer(1) << 32));
  }
}

int NumberField::sign(const std::vector<Rational>& a) const {
  bool all_zero = true;
  for (const auto& x : a) all_zero = all_zero && x == 0;
  if (all_zero) return 0;
  Interval iv = tight_;
  for (;;) {
    Interval e = horner(a, iv);
    if (e.lo > 0) return 1;
    if (e.hi < 0) return -1;
    iv = gen_.refine(iv.width() / Rational(Integer(1) << 32));
  }
}

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a == b || a->same_as(*b)) return a;
  throw Error(ErrorKind::unsupported_field, "operands live in different number fields");
}

FieldElement::FieldElement(FieldPtr f, std::vector<Rational> coords) : f_(std::move(f)) {
  if (!f_) {
    for (std::size_t i = 1; i < coords.size(); ++i)
      if (coords[i] != 0) throw Error(ErrorKind::coordinate_dimension, "irrational coordinates without a field");
    c_ = {coords.empty() ? Rational(0) : coords[0]};
    return;
  }
  const auto d = static_cast<std::size_t>(f_->degree());
  if (coords.size() > d)
    c_ = f_->reduce(Polynomial<Rational>(std::move(coords)));
  else {
    coords.resize(d, Rational(0));
    c_ = std::move(coords);
  }
}

FieldElement FieldElement::generator(const FieldPtr& f) {
  if (!f) throw Error(ErrorKind::precondition, "Q has no generator element");
  return FieldElement(f, {Rational(0), Rational(1)});
}

std::vector<Rational> FieldElement::coords(std::size_t dim) const {
  std::vector<Rational> c = c_;
  if (c.size() > dim) {
    for (std::size_t i = dim; i < c.size(); ++i)
      if (c[i] != 0) throw Error(ErrorKind::coordinate_dimension, "element does not fit the requested dimension");
    c.resize(dim);
  }
  c.resize(dim, Rational(0));
  return c;
}

bool FieldElement::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational FieldElement::to_rational() const {
  if (!is_rational()) throw Error(ErrorKind::precondition, "element is irrational");
  return c_[0];
}

int FieldElement::sign() const {
  if (is_rational()) return c_[0] > 0 ? 1 : (c_[0] < 0 ? -1 : 0);
  return f_->sign(c_);
}

Interval FieldElement::enclose(const Rational& width) const {
  if (is_rational()) return {c_[0], c_[0]};
  return f_->enclose(c_, width);
}

double FieldElement::approx() const {
  Interval iv = enclose(Rational(1, Integer(1) << 60));
  return ((iv.lo + iv.hi) / 2).convert_to<double>();
}

std::string FieldElement::to_string() const {
  if (is_rational()) return bratteli::to_string(c_[0]);
  Integer q = 1;
  for (const auto& x : c_) q = lcm(q, den(x));
  std::string body;
  int terms = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Integer n = num(c_[i]) * (q / den(c_[i]));
    if (n == 0) continue;
    std::string mono = i == 0 ? "" : (i == 1 ? "λ" : "λ^" + std::to_string(i));
    Integer a = n < 0 ? Integer(-n) : n;
    std::string term = (i > 0 && a == 1) ? mono : (i == 0 ? a.str() : a.str() + "*" + mono);
    if (terms == 0)
      body += (n < 0 ? "-" : "") + term;
    else
      body += (n < 0 ? " - " : " + ") + term;
    ++terms;
  }
  if (q == 1 && terms == 1) return body;
  return "(" + body + ")" + (q == 1 ? "" : "/" + q.str());
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

FieldElement lift(const FieldElement& x, const FieldPtr& f) {
  if (!f || x.field()) return x;
  return FieldElement(f, {x.coord(0)});
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (!a.f_ && !b.f_) return FieldElement(a.c_[0] + b.c_[0]);
  auto f = common_field(a.f_, b.f_);
  auto x = lift(a, f), y = lift(b, f);
  for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  x.f_ = f;
  return x;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (!a.f_ && !b.f_) return FieldElement(a.c_[0] * b.c_[0]);
  auto f = common_field(a.f_, b.f_);
  if (!a.f_ || !b.f_) {
    const Rational& s = a.f_ ? b.c_[0] : a.c_[0];
    FieldElement r = a.f_ ? a : b;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  return FieldElement(f, f->multiply(a.c_, b.c_));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  if (b.is_zero()) throw Error(ErrorKind::precondition, "division by zero");
  if (b.is_rational()) {
    FieldElement r = a;
    if (!r.f_ && b.f_) r = lift(r, b.f_);
    for (auto& x : r.c_) x /= b.c_[0];
    return r;
  }
  auto f = common_field(a.f_, b.f_);
  return a * FieldElement(f, f->inverse(b.c_));
}

FieldElement pow(const FieldElement& x, int e) {
  if (e < 0) return FieldElement(1) / pow(x, -e);
  FieldElement r(1), b = x;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return lift(r, x.field());
}

FieldElement abs(const FieldElement& x) { return x.sign() < 0 ? -x : x; }

Integer floor(const FieldElement& x) {
  if (x.is_rational()) return floor(x.to_rational());
  Rational w = 1;
  for (;;) {
    Interval iv = x.enclose(w);
    Integer a = floor(iv.lo), b = floor(iv.hi);
    if (a == b) return a;
    w /= 1024;
  }
}

}  // namespace bratteli
