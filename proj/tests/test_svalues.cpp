#include <doctest.h>

#include "bratteli/svalues.hpp"

#include <random>

using namespace bratteli;

namespace {
StationaryDiagram example1(std::int64_t n, std::int64_t m) {
  IncidenceMatrix f(4, 4);
  f << m, 0, 0, 0, 1, 2, 0, 0, 0, 1, n, 1, 0, 1, 1, n;
  return StationaryDiagram(f);
}
StationaryDiagram single(std::int64_t v) { return StationaryDiagram(IncidenceMatrix::Constant(1, 1, v)); }
FieldElement q(long p, long r = 1) { return FieldElement(Rational(p, r)); }
ClopenValuesSet zp(long p) { return grouplike_from_rationals({Rational(1), Rational(1, p)}); }
}  // namespace

TEST_CASE("clopen values of corpus measures") {
  auto dy = clopen_values(ergodic_measure(single(2), 0));
  REQUIRE(dy.bound);
  CHECK(*dy.bound == q(1));
  CHECK(svalues_member(dy, q(3, 8)) == Tri::yes);
  CHECK(svalues_member(dy, q(1, 3)) == Tri::no);
  CHECK(svalues_member(dy, q(0)) == Tri::yes);
  CHECK(svalues_member(dy, q(3, 2)) == Tri::no);  // above γ
  CHECK(svalues_member(dy, q(-1, 2)) == Tri::no);

  auto s3 = clopen_values(ergodic_measure(example1(3, 6), 2));
  CHECK_FALSE(s3.bound);
  CHECK(s3.H == group_from_generators(nullptr, {q(1)}));
  CHECK(s3.lambda == q(4));
  CHECK(svalues_member(s3, q(1001, 2)) == Tri::yes);
  CHECK(svalues_member(s3, q(5, 3)) == Tri::no);

  auto s4 = clopen_values(ergodic_measure(example1(4, 7), 2));
  CHECK(s4.H == group_from_generators(nullptr, {q(1, 3)}));
  CHECK(s4.lambda == q(5));
  CHECK(svalues_member(s4, q(2, 75)) == Tri::yes);
}

TEST_CASE("group-like set closure under differences") {
  auto s = clopen_values(ergodic_measure(example1(4, 7), 2));
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> k(0, 200), e(0, 3);
  for (int t = 0; t < 200; ++t) {
    FieldElement a = q(k(rng), 3) / pow(q(5), e(rng)), b = q(k(rng), 3) / pow(q(5), e(rng));
    if (b < a) std::swap(a, b);
    REQUIRE(svalues_member(s, a) == Tri::yes);
    REQUIRE(svalues_member(s, b) == Tri::yes);
    CHECK(svalues_member(s, b - a) == Tri::yes);
  }
}

TEST_CASE("equality and scaling") {
  CHECK(svalues_equal(zp(2), zp(2)) == Tri::yes);
  CHECK(svalues_equal(zp(2), zp(3)) == Tri::no);
  CHECK(svalues_equal(zp(2), grouplike_from_rationals({Rational(1), Rational(1, 4)})) == Tri::yes);
  CHECK(svalues_equal(scaled(zp(2), q(1, 3)), zp(2)) == Tri::no);
  CHECK(svalues_equal(scaled(zp(2), q(2)), zp(2)) == Tri::yes);  // 2·Z[1/2] = Z[1/2]
  // Example 1: S(μ3) = Z[1/2] and S(μ4) = (1/3) Z[1/5] under the raw eigenvector
  auto s3 = clopen_values(ergodic_measure(example1(3, 6), 2));
  CHECK(svalues_equal(s3, zp(2)) == Tri::yes);
  auto s4 = clopen_values(ergodic_measure(example1(4, 7), 2));
  CHECK(svalues_equal(s4, scaled(zp(5), q(1, 3))) == Tri::yes);
  // scaling covariance: doubling the measure doubles every value
  auto s4d = clopen_values(rescaled(ergodic_measure(example1(4, 7), 2), q(2)));
  for (int n = 1; n < 30; ++n) CHECK(svalues_member(s4d, q(2 * n, 75)) == svalues_member(s4, q(n, 75)));
  // bounded vs unbounded
  CHECK(svalues_equal(clopen_values(ergodic_measure(single(2), 0)), zp(2)) == Tri::no);
}

TEST_CASE("irrational clopen values") {
  IncidenceMatrix f(2, 2);
  f << 1, 1, 1, 0;
  auto mu = ergodic_measure(StationaryDiagram(f), 0);
  auto s = clopen_values(mu);
  REQUIRE(s.field);
  auto l = mu.lam;
  CHECK(svalues_member(s, FieldElement(1) / l) == Tri::yes);
  CHECK(svalues_member(s, FieldElement(1) / 2) == Tri::no);
  CHECK(svalues_equal(s, s) == Tri::yes);
  CHECK(svalues_equal(s, zp(2)) == Tri::no);
}

TEST_CASE("products") {
  auto p = product_svalues(zp(2), zp(3));
  CHECK(svalues_equal(p, zp(6)) == Tri::yes);
  CHECK(svalues_equal(product_svalues(zp(2), zp(2)), zp(2)) == Tri::yes);
  auto dy = clopen_values(ergodic_measure(single(2), 0));
  auto triv = clopen_values(ergodic_measure(single(1 + 1), 0));
  CHECK(svalues_equal(product_svalues(dy, triv), dy) == Tri::yes);
  auto d3 = clopen_values(ergodic_measure(single(3), 0));
  auto pd = product_svalues(dy, d3);
  CHECK(pd.bound);
  CHECK(svalues_member(pd, q(5, 36)) == Tri::yes);
  CHECK(svalues_member(pd, q(1, 5)) == Tri::no);
}

TEST_CASE("group-like truncations") {
  auto v = [](std::vector<std::pair<long, long>> xs) {
    std::vector<Rational> out;
    for (auto [a, b] : xs) out.emplace_back(a, b);
    std::sort(out.begin(), out.end());
    return out;
  };
  auto ok = is_group_like_truncated({v({{0, 1}, {1, 2}, {1, 1}, {3, 2}, {2, 1}}), Rational(2)});
  CHECK(ok.wraps_to_group);
  CHECK(ok.difference_closed);
  auto bad = is_group_like_truncated({v({{0, 1}, {1, 1}, {5, 2}}), Rational(5, 2)});
  CHECK_FALSE(bad.difference_closed);
  CHECK_FALSE(bad.wraps_to_group);
  std::vector<Rational> dyadic;
  for (int k = 0; k <= 16; ++k) dyadic.emplace_back(k, 16);
  CHECK(is_group_like_truncated({dyadic, Rational(1)}).group_like());
}

TEST_CASE("reciprocal sets") {
  auto r6 = rec_set(zp(6));
  CHECK(r6.to_string() == "{2: inf, 3: inf}");
  CHECK(rec_member(zp(6), 12));
  CHECK_FALSE(rec_member(zp(6), 5));
  ClopenValuesSet fifth;
  fifth.H = group_from_generators(nullptr, {q(1, 5)});
  auto r5 = rec_set(fifth);
  CHECK(r5.to_string() == "{5: 1}");
  CHECK_FALSE(rec_member(r5, 25));
  CHECK(rec_member(r5, 5));
  // lcm closure
  CHECK(rec_member(zp(6), 4));
  CHECK(rec_member(zp(6), 6));
  CHECK(rec_member(zp(6), 12));
  auto r12 = rec_set(grouplike_from_rationals({Rational(1, 12)}));
  CHECK(r12.infinite());
  ClopenValuesSet twelfth;
  twelfth.H = group_from_generators(nullptr, {q(1, 12)});
  CHECK_FALSE(rec_set(twelfth).infinite());
  CHECK(prime_sequence(r6, 6) == std::vector<Integer>{2, 3, 2, 3, 2, 3});
  PrimeMultiset mixed{{{Integer(2), std::nullopt}, {Integer(3), 1U}, {Integer(5), 2U}}};
  CHECK(prime_sequence(mixed, 7) == std::vector<Integer>{2, 3, 5, 2, 5, 2, 2});
  CHECK_THROWS_AS(rec_set(scaled(zp(2), q(1, 2) * q(3))), Error);
}
