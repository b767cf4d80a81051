#include <doctest.h>

#include "bratteli/classify.hpp"

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
ErgodicMeasure mu3() { return ergodic_measure(example1(3, 6), 2); }
ErgodicMeasure mu4() { return ergodic_measure(example1(4, 7), 2); }
ClopenValuesSet z6() { return grouplike_from_rationals({Rational(1), Rational(1, 6)}); }
}  // namespace

TEST_CASE("goodness on Example 1") {
  CHECK(is_good(mu3()).verdict == GoodnessVerdict::Value::good);
  auto v = is_good(mu4());
  REQUIRE(v.verdict == GoodnessVerdict::Value::bad);
  REQUIRE(v.witness);
  const auto& w = *v.witness;
  CHECK(w.vertex == 1);
  auto m = mu4();
  // w = x_1/λ^M, realized by the cylinder u, smaller than μ(V)
  CHECK(w.w == m.x[1] / pow(m.lam, static_cast<int>(w.exponent)));
  CHECK(cylinder_measure(m, w.u).value == w.w);
  CHECK(w.w < cylinder_measure(m, w.v).value);
  // the oracle agrees: no subset of V has measure w
  EnumerationBudget b;
  b.max_level = 5;
  auto pm = path_measure(m);
  CHECK(subset_search(pm, ClopenSet::of(w.v), w.w, b).status == SearchStatus::none);
  // simple diagram: vacuous
  CHECK(is_good(ergodic_measure(single(3), 0)).verdict == GoodnessVerdict::Value::good);
}

TEST_CASE("goodness is invariant under telescoping and rescaling") {
  for (unsigned k : {2U, 3U}) {
    auto t3 = telescope(example1(3, 6), k), t4 = telescope(example1(4, 7), k);
    CHECK(is_good(ergodic_measure(t3, 2)).verdict == GoodnessVerdict::Value::good);
    CHECK(is_good(ergodic_measure(t4, 2)).verdict == GoodnessVerdict::Value::bad);
  }
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(1, 50);
  for (int t = 0; t < 10; ++t) {
    auto c = q(d(rng), d(rng));
    CHECK(is_good(rescaled(mu3(), c)).verdict == GoodnessVerdict::Value::good);
    CHECK(is_good(rescaled(mu4(), c)).verdict == GoodnessVerdict::Value::bad);
  }
}

TEST_CASE("good measures pass sampled subset searches") {
  auto m = mu3();
  auto pm = path_measure(m);
  EnumerationBudget b;
  b.max_level = 6;
  auto v = ClopenSet::of(CylinderSet{{Step{2, 0}}});
  auto mv = clopen_measure(pm, v).value;  // 1/4
  for (int k = 1; k < 16; ++k) {
    auto w = q(k, 64);
    if (!(w < mv)) break;
    CHECK(subset_search(pm, v, w, b).status == SearchStatus::found);
  }
}

TEST_CASE("homeomorphism verdicts") {
  auto v = homeomorphic(mu3(), mu4());
  CHECK(v.verdict == HomeoVerdict::Value::not_homeomorphic);
  CHECK(v.reason == HomeoVerdict::Reason::goodness_mismatch);
  CHECK(homeomorphic(mu3(), mu3()).verdict == HomeoVerdict::Value::homeomorphic);
  auto both_bad = homeomorphic(mu4(), mu4());
  CHECK(both_bad.verdict == HomeoVerdict::Value::undetermined);

  auto s = clopen_values(ergodic_measure(single(2), 0));
  auto a = alphaZ_product(s), p = one_point_object(s);
  auto ap = homeomorphic(a, p);
  CHECK(ap.verdict == HomeoVerdict::Value::not_homeomorphic);
  CHECK(ap.reason == HomeoVerdict::Reason::defective_profile_mismatch);
  CHECK(homeomorphic(a, a).verdict == HomeoVerdict::Value::homeomorphic);
  // symmetric
  CHECK(homeomorphic(p, a).verdict == ap.verdict);
  CHECK(homeomorphic(mu4(), mu3()).reason == v.reason);
  // S mismatch between good measures
  auto dy = ergodic_measure(single(2), 0), tri = ergodic_measure(single(3), 0);
  auto dt = homeomorphic(dy, tri);
  CHECK(dt.verdict == HomeoVerdict::Value::not_homeomorphic);
  CHECK(dt.reason == HomeoVerdict::Reason::svalues_mismatch);
}

TEST_CASE("normalization invariance of verdicts") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(1, 30);
  const auto base = homeomorphic(mu3(), mu3());
  for (int t = 0; t < 5; ++t) {
    auto c = q(d(rng), d(rng));
    CHECK(homeomorphic(rescaled(mu3(), c), rescaled(mu3(), c)).verdict == base.verdict);
    CHECK(homeomorphic(rescaled(mu3(), c), rescaled(mu4(), c)).reason == HomeoVerdict::Reason::goodness_mismatch);
    CHECK(canonical(rescaled(mu3(), c)).scale == canonical(mu3()).scale);
  }
}

TEST_CASE("weak homeomorphism") {
  auto a = invariants(mu3());
  auto b = invariants(rescaled(mu3(), q(2)));
  auto r = weakly_homeomorphic(a, b);
  REQUIRE(r.verdict == Tri::yes);
  CHECK(svalues_equal(a.svalues, scaled(b.svalues, *r.c)) == Tri::yes);

  auto zo = [](std::vector<Rational> g) { return invariants(alphaZ_product([&] {
    auto s = grouplike_from_rationals(g);
    s.bound = FieldElement(1);
    return s;
  }())); };
  auto half = zo({Rational(1), Rational(1, 2)});
  auto third_half = half;
  third_half.svalues = scaled(half.svalues, q(1, 3));
  auto r3 = weakly_homeomorphic(half, third_half);
  REQUIRE(r3.verdict == Tri::yes);
  CHECK(*r3.c == q(3));
  auto r23 = weakly_homeomorphic(half, zo({Rational(1), Rational(1, 3)}));
  CHECK(r23.verdict == Tri::no);
  CHECK_FALSE(r23.c);
  // finite measures: c forced by the masses
  auto f2 = invariants(ergodic_measure(single(2), 0));
  auto f2d = invariants(rescaled(ergodic_measure(single(2), 0), q(5)));
  auto rf = weakly_homeomorphic(f2, f2d);
  REQUIRE(rf.verdict == Tri::yes);
  CHECK(*rf.c == q(1, 5));
}

TEST_CASE("good orders") {
  auto s = clopen_values(ergodic_measure(single(2), 0));
  CHECK(good_order_exists(invariants(one_point_object(s))) == Tri::yes);
  CHECK(good_order_exists(invariants(alphaZ_product(s))) == Tri::no);
  CHECK(good_order_exists(invariants(mu3())) == Tri::no);
  CHECK_THROWS_AS(good_order_exists(invariants(ergodic_measure(single(2), 0))), Error);
}

TEST_CASE("back and forth") {
  auto dy = path_measure(ergodic_measure(single(2), 0));
  auto c = back_and_forth(dy, dy, 2);
  CHECK(verify(c, dy, dy).empty());
  CHECK(c.stages.back().x.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(c.stages.back().x[i] == c.stages.back().y[i]);

  auto dy2 = path_measure(ergodic_measure(telescope(single(2), 2), 0));
  auto c2 = back_and_forth(dy, dy2, 2);
  CHECK(verify(c2, dy, dy2).empty());

  auto o1 = odometer_from_grouplike(z6());
  auto o2 = odometer_from_grouplike(grouplike_from_rationals({Rational(1, 2), Rational(1, 3)}));
  auto c3 = back_and_forth(o1.measure, o2.measure, 3);
  CHECK(verify(c3, o1.measure, o2.measure).empty());

  // tampering is caught
  auto bad = c2;
  std::swap(bad.stages.back().y[0], bad.stages.back().y[1]);
  bad.stages.back().measure[0] = ExtValue{q(1, 3), false};
  CHECK_FALSE(verify(bad, dy, dy2).empty());

  // different S: matching fails
  auto tri = path_measure(ergodic_measure(single(3), 0));
  try {
    back_and_forth(dy, tri, 2);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::certificate_failure);
  }
}
