#include <doctest.h>

#include "bratteli/oracle.hpp"

#include <algorithm>
#include <cstdlib>

using namespace bratteli;

namespace {
StationaryDiagram example1(std::int64_t n, std::int64_t m) {
  IncidenceMatrix f(4, 4);
  f << m, 0, 0, 0, 1, 2, 0, 0, 0, 1, n, 1, 0, 1, 1, n;
  return StationaryDiagram(f);
}
StationaryDiagram single(std::int64_t v) { return StationaryDiagram(IncidenceMatrix::Constant(1, 1, v)); }
FieldElement q(long p, long r = 1) { return FieldElement(Rational(p, r)); }
PathMeasure dyadic() { return path_measure(ergodic_measure(single(2), 0)); }

// binary odometer: add one with carry, little-endian
CylinderSet add_one(const CylinderSet& c) {
  auto r = c;
  for (auto& s : r.path) {
    if (s.edge == 0) {
      s.edge = 1;
      return r;
    }
    s.edge = 0;
  }
  return r;
}
}  // namespace

TEST_CASE("dyadic clopen values") {
  EnumerationBudget b;
  b.max_level = 3;
  auto e = enumerate_clopen_values(dyadic(), b);
  CHECK_FALSE(e.partial);
  REQUIRE(e.values.size() == 9);
  for (int k = 0; k <= 8; ++k) CHECK(e.values[static_cast<std::size_t>(k)] == q(k, 8));
  b.value_bound = q(1, 2);
  CHECK(enumerate_clopen_values(dyadic(), b).values.size() == 5);
}

TEST_CASE("subset search") {
  EnumerationBudget b;
  b.max_level = 4;
  auto mu = dyadic();
  auto v = ClopenSet::whole();
  auto r = subset_search(mu, v, q(3, 8), b);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(r.level == 3);
  CHECK(clopen_measure(mu, r.set).value == q(3, 8));
  CHECK(subset(mu.diagram, r.set, lift(mu.diagram, v, 3)));
  CHECK(subset_search(mu, v, q(1, 3), b).status == SearchStatus::none);
  CHECK(subset_search(mu, v, q(0), b).status == SearchStatus::found);

  // Example 1 (n=4, M=7): x_1 = 2/3 at λ = 5; a level-1 α cylinder has measure 1/5
  auto m4 = ergodic_measure(example1(4, 7), 2);
  auto pm = path_measure(m4);
  auto cyl = cylinders_at_level(pm.diagram, 1);
  ClopenSet w;
  for (const auto& c : cyl)
    if (c.terminal_vertex() == 2) {
      w = ClopenSet::of(c);
      break;
    }
  CHECK(clopen_measure(pm, w).value == q(1, 5));
  b.max_level = 5;
  auto found = subset_search(pm, w, q(2, 15), b);
  CHECK(found.status == SearchStatus::none);
  auto ok = subset_search(pm, w, q(3, 25), b);
  CHECK(ok.status == SearchStatus::found);
  if (ok.status == SearchStatus::found) CHECK(clopen_measure(pm, ok.set).value == q(3, 25));
}

TEST_CASE("refinability") {
  EnumerationBudget b;
  b.max_level = 4;
  auto mu = dyadic();
  auto r = refinability_check(mu, ClopenSet::whole(), {q(1, 2), q(1, 4), q(1, 4)}, b);
  REQUIRE(r.status == SearchStatus::found);
  REQUIRE(r.parts.size() == 3);
  CHECK(clopen_measure(mu, r.parts[0]).value == q(1, 2));
  CHECK(clopen_measure(mu, r.parts[1]).value == q(1, 4));
  CHECK(disjoint(mu.diagram, r.parts[0], r.parts[1]));
  CHECK(disjoint(mu.diagram, r.parts[1], r.parts[2]));
  CHECK(refinability_check(mu, ClopenSet::whole(), {q(1, 3), q(2, 3)}, b).status == SearchStatus::none);
  CHECK_THROWS_AS(refinability_check(mu, ClopenSet::whole(), {q(1, 2)}, b), Error);
  CHECK_THROWS_AS(refinability_check(mu, ClopenSet::whole(), {q(3, 2), q(-1, 2)}, b), Error);
}

TEST_CASE("invariance check") {
  auto mu = dyadic();
  CHECK(verify_invariance(mu, add_one, 4));
  // corrupted measure: level weights 3^-N are not additive, so the sums disagree
  PathMeasure bad = mu;
  bad.value = [](std::size_t level, std::uint32_t) {
    return ExtValue{pow(FieldElement(Rational(1, 3)), static_cast<int>(level)), false};
  };
  CHECK_FALSE(verify_invariance(bad, add_one, 3));
  // a non-bijective map
  auto collapse = [](const CylinderSet& c) {
    auto r = c;
    for (auto& s : r.path) s.edge = 0;
    return r;
  };
  CHECK_FALSE(verify_invariance(mu, collapse, 3));
}

TEST_CASE("budget from environment") {
  setenv("BRATTELI_BUDGET", "max_level=7,max_cells=123,bound=3/2", 1);
  auto b = budget_from_env();
  CHECK(b.max_level == 7);
  CHECK(b.max_cells == 123);
  REQUIRE(b.value_bound);
  CHECK(*b.value_bound == q(3, 2));
  setenv("BRATTELI_BUDGET", "nope", 1);
  CHECK_THROWS_AS(budget_from_env(), Error);
  unsetenv("BRATTELI_BUDGET");
}

TEST_CASE("irrational enumeration against brute force") {
  IncidenceMatrix f(2, 2);
  f << 1, 1, 1, 0;
  const auto mu = ergodic_measure(StationaryDiagram(f), 0);
  const auto pm = path_measure(mu);
  for (std::size_t level = 1; level <= 3; ++level) {
    std::vector<FieldElement> cyl;
    for (const auto& c : cylinders_at_level(pm.diagram, level)) cyl.push_back(cylinder_measure(pm, c).value);
    REQUIRE(cyl.size() <= 16);
    std::vector<FieldElement> brute;
    for (std::size_t mask = 0; mask < (std::size_t(1) << cyl.size()); ++mask) {
      FieldElement s(0);
      for (std::size_t i = 0; i < cyl.size(); ++i)
        if (mask >> i & 1) s += cyl[i];
      if (std::find(brute.begin(), brute.end(), s) == brute.end()) brute.push_back(s);
    }
    std::sort(brute.begin(), brute.end(), [](const auto& a, const auto& b) { return a < b; });
    EnumerationBudget b;
    b.max_level = level;
    const auto e = enumerate_clopen_values(pm, b);
    CHECK_FALSE(e.partial);
    CHECK(e.values == brute);
    // bounded: exactly the brute-force values up to 1/λ, which is itself attained
    b.value_bound = FieldElement(1) / mu.lam;
    const auto eb = enumerate_clopen_values(pm, b);
    std::vector<FieldElement> cut;
    for (const auto& v : brute)
      if (!(*b.value_bound < v)) cut.push_back(v);
    CHECK(eb.values == cut);
  }
}
