#include <doctest.h>

#include "bratteli/construct.hpp"
#include "bratteli/oracle.hpp"

#include <set>

using namespace bratteli;

namespace {
StationaryDiagram example1(std::int64_t n, std::int64_t m) {
  IncidenceMatrix f(4, 4);
  f << m, 0, 0, 0, 1, 2, 0, 0, 0, 1, n, 1, 0, 1, 1, n;
  return StationaryDiagram(f);
}
StationaryDiagram single(std::int64_t v) { return StationaryDiagram(IncidenceMatrix::Constant(1, 1, v)); }
FieldElement q(long p, long r = 1) { return FieldElement(Rational(p, r)); }
ClopenValuesSet z_over(std::vector<Rational> g) { return grouplike_from_rationals(g); }
}  // namespace

TEST_CASE("odometer for Z[1/6]") {
  auto o = odometer_from_grouplike(z_over({Rational(1), Rational(1, 6)}));
  CHECK(o.prime_prefix.empty());
  CHECK(o.prime_cycle == std::vector<Integer>{2, 3});
  for (std::size_t n = 1; n <= 6; ++n) CHECK(odometer_prime(o, n) == (n % 2 ? 2 : 3));
  for (std::size_t n = 1; n <= 8; ++n) CHECK(divergence_term(o, n) == Rational(1));
  CHECK(o.diagram.root_edges() == std::vector<std::int64_t>{2, 2});
  CHECK(o.diagram.incidence(1)(0, 0) == 3);
  CHECK(svalues_equal(o.svalues, z_over({Rational(1), Rational(1, 6)})) == Tri::yes);
  CHECK(svalues_member(o.svalues, q(5, 72)) == Tri::yes);
  CHECK(svalues_member(o.svalues, q(1, 10)) == Tri::no);
  // level-3 α cylinder: 1/(2·3·2)
  CHECK(o.measure.value(3, 1).value == q(1, 12));
  CHECK(o.measure.value(3, 0).infinite);
  // clopen values seen by brute force are in S
  EnumerationBudget b;
  b.max_level = 3;
  b.value_bound = q(2);
  auto e = enumerate_clopen_values(o.measure, b);
  CHECK_FALSE(e.partial);
  for (const auto& v : e.values) CHECK(svalues_member(o.svalues, v) == Tri::yes);
  CHECK(std::find(e.values.begin(), e.values.end(), q(7, 12)) != e.values.end());
}

TEST_CASE("odometer prime sequences") {
  auto dy = odometer_from_grouplike(z_over({Rational(1), Rational(1, 2)}));
  for (std::size_t n = 1; n <= 5; ++n) CHECK(odometer_prime(dy, n) == 2);
  // {2: inf, 3: 1}: D = Z[1/2]/3 with 1 in it
  ClopenValuesSet mixed;
  mixed.H = group_from_generators(nullptr, {q(1, 3)});
  mixed.lambda = q(2);
  auto o = odometer_from_grouplike(mixed);
  CHECK(o.prime_prefix == std::vector<Integer>{2, 3});
  CHECK(o.prime_cycle == std::vector<Integer>{2});
  CHECK(svalues_equal(o.svalues, mixed) == Tri::yes);
  ClopenValuesSet twelfth;
  twelfth.H = group_from_generators(nullptr, {q(1, 12)});
  try {
    odometer_from_grouplike(twelfth);
    FAIL("expected density violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::density_violation);
  }
}

TEST_CASE("vershik successor") {
  auto d = FiniteRankDiagram::from_stationary(single(2));
  auto path = [](std::vector<std::uint32_t> bits) {
    CylinderSet c;
    for (auto b : bits) c.path.push_back(Step{0, b});
    return c;
  };
  CHECK(vershik_successor(d, path({1, 1, 0})) == path({0, 0, 1}));
  CHECK(vershik_successor(d, path({0, 0, 0})) == path({1, 0, 0}));
  CHECK(vershik_successor(d, path({1, 1, 1})) == path({0, 0, 0}));
  // full cycle through all 8 paths
  auto p = path({0, 0, 0});
  std::set<CylinderSet> seen;
  for (int i = 0; i < 8; ++i) {
    seen.insert(p);
    p = vershik_successor(d, p);
  }
  CHECK(seen.size() == 8);
  CHECK(p == path({0, 0, 0}));

  auto o = odometer_from_grouplike(z_over({Rational(1), Rational(1, 6)}));
  auto succ = [&](const CylinderSet& c) { return vershik_successor(o.diagram, c); };
  for (std::size_t k = 1; k <= 5; ++k) CHECK(verify_invariance(o.measure, succ, k));
  auto dm = path_measure(ergodic_measure(single(2), 0));
  CHECK(verify_invariance(dm, [&](const CylinderSet& c) { return vershik_successor(dm.diagram, c); }, 4));
  // Example 1 diagram, successor is a bijection per terminal vertex
  auto e1 = path_measure(ergodic_measure(example1(3, 6), 2));
  CHECK(verify_invariance(e1, [&](const CylinderSet& c) { return vershik_successor(e1.diagram, c); }, 3));
}

TEST_CASE("adding infinite components") {
  auto d = example1(3, 6);
  auto before = ergodic_measure(d, 2);
  CHECK(minimal_component_count(d) == 1);
  for (std::size_t i : {0U, 1U, 2U}) {
    auto d2 = add_infinite_components(d, 2, i);
    CHECK(minimal_component_count(d2) == 1 + i);
    auto after = ergodic_measure(d2, 2);
    CHECK(svalues_equal(clopen_values(after), clopen_values(before)) == Tri::yes);
    CHECK(after.finite == before.finite);
  }
  CHECK(add_infinite_components(d, 2, 0) == d);
  // simple diagram: the measure turns infinite
  auto s = single(2);
  CHECK(ergodic_measure(s, 0).finite);
  auto s2 = add_infinite_components(s, 0, 1);
  auto m2 = ergodic_measure(s2, class_decomposition(s2).class_of[0]);
  CHECK_FALSE(m2.finite);
  CHECK(svalues_equal(scaled(clopen_values(m2), q(1)), scaled(z_over({Rational(1), Rational(1, 2)}), q(1))) == Tri::yes);
}

TEST_CASE("abstract good measures") {
  auto s = clopen_values(ergodic_measure(single(2), 0));
  auto a = alphaZ_product(s), b = one_point_object(s);
  CHECK_FALSE(a.svalues.bound);
  CHECK(svalues_equal(a.svalues, b.svalues) == Tri::yes);
  CHECK(svalues_equal(a.svalues, z_over({Rational(1), Rational(1, 2)})) == Tri::yes);
  CHECK(a.profile.kind == DefectiveProfile::Kind::cantor);
  CHECK(b.profile.kind == DefectiveProfile::Kind::single_point);
  CHECK_THROWS_AS(alphaZ_product(a.svalues), Error);
}
