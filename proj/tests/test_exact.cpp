#include <doctest.h>

#include "bratteli/algebraic.hpp"
#include "bratteli/compose.hpp"
#include "bratteli/field.hpp"
#include "bratteli/linear.hpp"
#include "bratteli/subgroup.hpp"

#include <algorithm>
#include <random>

using namespace bratteli;

namespace {
FieldPtr golden() {
  return NumberField::make(AlgebraicNumber::from_interval(Polynomial<Integer>{-1, -1, 1}, Rational(3, 2), 2));
}
FieldElement q(long p, long r = 1) { return FieldElement(Rational(p, r)); }
}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational(" 6/4 ")) == "3/2");
  CHECK(to_string(parse_rational("-7")) == "-7");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(floor(Rational(-1, 2)) == -1);
  CHECK(ceil(Rational(-1, 2)) == 0);
}

TEST_CASE("polynomial arithmetic") {
  Polynomial<Rational> p{-1, 0, 1};  // x^2 - 1
  Polynomial<Rational> d{-1, 1};
  auto [quo, rem] = divmod(p, d);
  CHECK(rem.is_zero());
  CHECK(quo == Polynomial<Rational>{1, 1});
  CHECK(gcd(p, Polynomial<Rational>{1, 1}) == Polynomial<Rational>{1, 1});
  CHECK(to_string(primitive_part(Polynomial<Rational>{Rational(1, 2), 0, Rational(-3, 4)})) == "3*x^2 - 2");
  // squarefree part of (x-1)^2 (x+2)
  Polynomial<Integer> r{2, -3, 0, 1};
  CHECK(squarefree_part(r) == Polynomial<Integer>{-2, 1, 1});
}

TEST_CASE("characteristic polynomial") {
  Matrix<Integer> a(2, 2);
  a << 3, 1, 1, 3;
  CHECK(characteristic_polynomial(a) == Polynomial<Integer>{8, -6, 1});
  Matrix<Integer> z = Matrix<Integer>::Zero(1, 1);
  CHECK(characteristic_polynomial(z) == Polynomial<Integer>{0, 1});
}

TEST_CASE("real root isolation and perron roots") {
  auto roots = isolate_real_roots(Polynomial<Integer>{-2, 0, 1});
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].hi <= 0);
  CHECK(roots[1].lo >= 0);
  auto exact = isolate_real_roots(Polynomial<Integer>{0, -1, 1});  // roots 0 and 1
  REQUIRE(exact.size() == 2);

  Matrix<Integer> m(2, 2);
  m << 1, 1, 1, 0;
  auto phi = perron_root(m);
  CHECK(phi.minpoly() == Polynomial<Integer>{-1, -1, 1});
  CHECK(phi.approx() == doctest::Approx(1.6180339887));

  Matrix<Integer> ex1(2, 2);
  ex1 << 3, 1, 1, 3;
  auto four = perron_root(ex1);
  CHECK(four.is_rational());
  CHECK(four.to_rational() == 4);

  // block-diagonal: charpoly (x^2 - x - 1)(x - 1)^2 ; Perron root is still φ
  Matrix<Integer> blk = Matrix<Integer>::Zero(4, 4);
  blk(0, 0) = 1;
  blk(0, 1) = 1;
  blk(1, 0) = 1;
  blk(2, 2) = 1;
  blk(3, 3) = 1;
  CHECK(perron_root(blk) == phi);

  // x^4 - 10x^2 + 1 is irreducible (minpoly of sqrt2 + sqrt3); companion Perron root
  Matrix<Integer> comp = Matrix<Integer>::Zero(4, 4);
  comp(1, 0) = comp(2, 1) = comp(3, 2) = 1;
  comp(0, 3) = -1;
  comp(2, 3) = 10;
  auto s = perron_root(comp);
  CHECK(s.degree() == 4);
  CHECK(s.approx() == doctest::Approx(1.4142135623730951 + 1.7320508075688772));
}

TEST_CASE("algebraic comparison") {
  AlgebraicNumber a(Rational(3, 2));
  auto phi = AlgebraicNumber::from_interval(Polynomial<Integer>{-1, -1, 1}, 1, 2);
  auto psi = AlgebraicNumber::from_interval(Polynomial<Integer>{-1, -1, 1}, -1, 0);
  CHECK(compare(a, phi) < 0);
  CHECK(compare(psi, a) < 0);
  CHECK(compare(phi, phi) == 0);
  auto sqrt3 = AlgebraicNumber::from_interval(Polynomial<Integer>{-3, 0, 1}, 1, 2);
  CHECK(compare(phi, sqrt3) < 0);
  CHECK_THROWS_AS(AlgebraicNumber::from_interval(Polynomial<Integer>{-1, -1, 1}, -2, 2), Error);
}

TEST_CASE("field arithmetic reduces modulo the minimal polynomial") {
  auto f = golden();
  auto l = FieldElement::generator(f);
  CHECK(l * l == l + 1);
  CHECK((FieldElement(1) / l) == l - 1);
  CHECK(l.sign() > 0);
  CHECK((l - q(8, 5)).sign() > 0);
  CHECK((l - q(13, 8)).sign() < 0);
  CHECK(floor(l * l * l) == 4);
  CHECK((l * l).to_string() == "(1 + λ)");
  CHECK(((l + 2) / 3).to_string() == "(2 + λ)/3");
}

TEST_CASE("group_from_generators examples") {
  auto g = group_from_generators(nullptr, {q(2, 3), q(1), q(1)});
  REQUIRE(g.rank() == 1);
  CHECK(g.basis()[0] == q(1, 3));
  CHECK(group_member(g, q(5, 3)));
  CHECK_FALSE(group_member(g, q(1, 2)));

  auto f = golden();
  auto l = FieldElement::generator(f);
  auto h = group_from_generators(f, {FieldElement(1), l});
  CHECK(h.rank() == 2);
  CHECK(group_member(h, l * l));
  CHECK_FALSE(group_member(h, l / 2));

  auto zero = group_from_generators(nullptr, {q(0)});
  CHECK(zero.rank() == 0);
  CHECK(zero.basis().empty());

  CHECK_THROWS_AS(group_from_generators(nullptr, {l}), Error);
}

TEST_CASE("canonical basis under shuffling and duplication") {
  auto f = golden();
  auto l = FieldElement::generator(f);
  std::vector<FieldElement> gens{q(2, 3) * l, q(4, 5), l + q(1, 7), q(6, 5) * l - 2};
  auto base = group_from_generators(f, gens);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = gens;
    g.push_back(gens[static_cast<std::size_t>(trial) % gens.size()] + gens[(static_cast<std::size_t>(trial) + 1) % gens.size()]);
    g.push_back(gens[static_cast<std::size_t>(trial) % gens.size()]);
    std::shuffle(g.begin(), g.end(), rng);
    auto h = group_from_generators(f, g);
    CHECK(h == base);
    CHECK(h.hnf() == base.hnf());
  }
  for (const auto& x : gens) CHECK(base.contains(x));
  CHECK(base.contains(gens[0] + gens[2]));
  CHECK(base.contains(-gens[1]));
}

TEST_CASE("lambda closure membership: worked examples") {
  auto z = group_from_generators(nullptr, {q(1)});
  auto r = lambda_closure_member(z, q(4), q(3, 8));
  CHECK(r.answer == Tri::yes);
  CHECK(r.exponent == 2);
  CHECK(lambda_closure_member(z, q(4), q(1, 3)).answer == Tri::no);
  auto seven = lambda_closure_member(z, q(4), q(7));
  CHECK(seven.answer == Tri::yes);
  CHECK(seven.exponent == 0);
  auto third = group_from_generators(nullptr, {q(1, 3)});
  CHECK_THROWS_AS(lambda_closure_member(third, q(1, 2), q(1)), Error);
}

TEST_CASE("rational and lattice routes agree") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> small(1, 40), lam(2, 30);
  for (int trial = 0; trial < 400; ++trial) {
    auto h = group_from_generators(nullptr, {q(small(rng), small(rng))});
    FieldElement l = q(lam(rng));
    FieldElement x = q(small(rng), small(rng) * small(rng));
    auto a = closure_member_rational(h, l, x);
    auto b = closure_member_lattice(h, l, x);
    CHECK(a.answer == b.answer);
    CHECK(a.exponent == b.exponent);
    if (a.answer == Tri::yes) {
      CHECK(h.contains(pow(l, a.exponent) * x));
      if (a.exponent > 0) CHECK_FALSE(h.contains(pow(l, a.exponent - 1) * x));
    }
  }
}

TEST_CASE("lattice route on an irrational field") {
  auto f = golden();
  auto l = FieldElement::generator(f);
  // λ is a unit: λ^N x ∈ Z[λ] iff x ∈ Z[λ]
  auto h = group_from_generators(f, {FieldElement(1), l});
  CHECK(lambda_closure_member(h, l, l / 2).answer == Tri::no);
  CHECK(lambda_closure_member(h, l, l * l).exponent == 0);
  // μ = 2 + λ has norm 5; 1/(2+λ) needs one multiplication
  auto mu = l + 2;
  auto r = lambda_closure_member(h, mu, FieldElement(1) / mu);
  CHECK(r.answer == Tri::yes);
  CHECK(r.exponent == 1);
  auto r2 = lambda_closure_member(h, mu, FieldElement(3) / (mu * mu * mu));
  CHECK(r2.answer == Tri::yes);
  CHECK(r2.exponent == 3);
  CHECK(lambda_closure_member(h, mu, FieldElement(1) / 3).answer == Tri::no);
  // monotone
  for (int n = r2.exponent; n < r2.exponent + 4; ++n) CHECK(h.contains(pow(mu, n) * FieldElement(3) / (mu * mu * mu)));
}

TEST_CASE("scaled groups and find_scale") {
  auto z = group_from_generators(nullptr, {q(1)});
  auto third = group_from_generators(nullptr, {q(1, 3)});
  CHECK(scaled_group_equal(z, third, q(1, 3)));
  CHECK(scaled_group_equal(z, z, q(1)));
  auto s = find_scale(z, third);
  REQUIRE(s.scale);
  CHECK(*s.scale == q(1, 3));
  CHECK(s.complete);
}

TEST_CASE("composite field") {
  auto sqrt2 = NumberField::make(AlgebraicNumber::from_interval(Polynomial<Integer>{-2, 0, 1}, 1, 2));
  auto sqrt3 = NumberField::make(AlgebraicNumber::from_interval(Polynomial<Integer>{-3, 0, 1}, 1, 2));
  auto c = compose_fields(sqrt2, sqrt3);
  REQUIRE(c.field);
  CHECK(c.field->degree() == 4);
  CHECK(c.image_a * c.image_a == FieldElement(2));
  CHECK(c.image_b * c.image_b == FieldElement(3));
  CHECK(c.image_a.sign() > 0);
  CHECK(c.image_b.sign() > 0);
  CHECK((c.image_b - c.image_a).sign() > 0);
  // embedding respects arithmetic
  auto a = FieldElement::generator(sqrt2);
  CHECK(embed(a * a + a, c.image_a) == c.image_a * c.image_a + c.image_a);
  // same field, different presentation: sqrt2 and 1 + sqrt2
  auto shifted = NumberField::make(AlgebraicNumber::from_interval(Polynomial<Integer>{-1, -2, 1}, 2, 3));
  auto d = compose_fields(sqrt2, shifted);
  CHECK(d.field->degree() == 2);
  CHECK(d.image_b == d.image_a + 1);
}
