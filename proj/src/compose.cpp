#include "bratteli/compose.hpp"

#include "bratteli/error.hpp"
#include "bratteli/linear.hpp"

namespace bratteli {

namespace {

Matrix<Rational> companion(const Polynomial<Rational>& monic_p) {
  const int d = monic_p.degree();
  Matrix<Rational> c = Matrix<Rational>::Zero(d, d);
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -monic_p.coeff(static_cast<std::size_t>(i));
  return c;
}

Matrix<Rational> kron(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  Matrix<Rational> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index p = 0; p < b.rows(); ++p)
        for (Eigen::Index q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return k;
}

}  // namespace

FieldElement embed(const FieldElement& x, const FieldElement& g) {
  if (x.is_rational()) return lift(FieldElement(x.to_rational()), g.field());
  FieldElement acc = lift(FieldElement(0), g.field());
  const auto& c = x.raw();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * g + FieldElement(*it);
  return acc;
}

FinGenSubgroup embed(const FinGenSubgroup& h, const FieldPtr& target, const FieldElement& g) {
  std::vector<FieldElement> gens;
  for (const auto& b : h.basis()) gens.push_back(embed(b, g));
  return FinGenSubgroup::from_generators(target, gens);
}

CompositeField compose_fields(const FieldPtr& a, const FieldPtr& b, int max_degree) {
  if (!a && !b) return {nullptr, FieldElement(0), FieldElement(0)};
  if (!a) return {b, FieldElement(0), FieldElement::generator(b)};
  if (!b) return {a, FieldElement::generator(a), FieldElement(0)};
  if (a->same_as(*b)) return {a, FieldElement::generator(a), FieldElement::generator(a)};
  const int d1 = a->degree(), d2 = b->degree();
  if (d1 * d2 > max_degree)
    throw Error(ErrorKind::unsupported_field, "composite field degree " + std::to_string(d1 * d2) + " exceeds cap");
  const auto c1 = companion(a->modulus()), c2 = companion(b->modulus());
  const Matrix<Rational> i1 = Matrix<Rational>::Identity(d1, d1), i2 = Matrix<Rational>::Identity(d2, d2);
  for (int k = 1; k <= 64; ++k) {
    Matrix<Rational> m = kron(c1, i2) + Rational(k) * kron(i1, c2);
    auto r = primitive_part(characteristic_polynomial(m));
    auto rr = convert<Integer, Rational>(r);
    if (gcd(rr, derivative(rr)).degree() > 0) continue;
    // locate γ = a + k b among the real roots of r
    auto roots = isolate_real_roots(r);
    Rational w = 1;
    const Interval* hit = nullptr;
    for (int iter = 0; iter < 400 && !hit; ++iter, w /= 16) {
      Interval g = a->generator().refine(w) + Rational(k) * b->generator().refine(w);
      int overlaps = 0;
      const Interval* last = nullptr;
      for (const auto& iv : roots)
        if (!(iv.hi < g.lo || g.hi < iv.lo)) {
          ++overlaps;
          last = &iv;
        }
      if (overlaps == 1) hit = last;
    }
    if (!hit || hit->lo == hit->hi) continue;
    auto mg = minimal_factor(r, *hit);
    auto field = NumberField::make(AlgebraicNumber::from_interval(mg, hit->lo, hit->hi));
    if (!field) continue;
    const FieldElement gamma = FieldElement::generator(field);
    // b = the common root of p_a(γ - k y) and p_b(y)
    Polynomial<FieldElement> lin{gamma, FieldElement(Rational(-k))};
    auto pa = compose(a->modulus(), lin);
    auto pb = convert<Rational, FieldElement>(b->modulus());
    auto g = gcd(pa, pb);
    if (g.degree() != 1) continue;
    FieldElement img_b = -g.coeff(0) / g.coeff(1);
    FieldElement img_a = gamma - FieldElement(Rational(k)) * img_b;
    return {field, img_a, img_b};
  }
  throw Error(ErrorKind::unsupported_field, "no primitive element found");
}

}  // namespace bratteli
