#include "bratteli/construct.hpp"

#include <algorithm>

namespace bratteli {

namespace {

IncidenceMatrix odometer_step(const Integer& p) {
  const auto v = p.convert_to<std::int64_t>();
  IncidenceMatrix f(2, 2);
  f << v, 0, v, v;
  return f;
}

}  // namespace

Odometer odometer_from_grouplike(const ClopenValuesSet& d) {
  if (d.field) throw Error(ErrorKind::unsupported, "odometer construction needs rational generators");
  Odometer o;
  o.primes = rec_set(d);
  if (!o.primes.infinite())
    throw Error(ErrorKind::density_violation, "Rec(D) = " + o.primes.to_string() + " is finite, so D is not dense");
  unsigned rounds = 0;
  for (const auto& [p, m] : o.primes.entries)
    if (m) rounds = std::max(rounds, *m);
  std::size_t infinite_count = 0, prefix_len = 0;
  for (const auto& [p, m] : o.primes.entries) {
    if (!m) ++infinite_count;
    else prefix_len += *m;
  }
  prefix_len += infinite_count * rounds;
  auto seq = prime_sequence(o.primes, prefix_len + infinite_count);
  o.prime_prefix.assign(seq.begin(), seq.begin() + static_cast<long>(prefix_len));
  o.prime_cycle.assign(seq.begin() + static_cast<long>(prefix_len), seq.end());
  for (const auto& p : seq)
    if (p > Integer(1) << 31) throw Error(ErrorKind::unsupported, "prime too large for an edge count");

  // F_n uses p_{n+1}: drop p_1 from the matrix sequence
  std::vector<IncidenceMatrix> prefix, cycle;
  if (!o.prime_prefix.empty()) {
    for (std::size_t i = 1; i < o.prime_prefix.size(); ++i) prefix.push_back(odometer_step(o.prime_prefix[i]));
    for (const auto& p : o.prime_cycle) cycle.push_back(odometer_step(p));
  } else {
    for (std::size_t i = 0; i < o.prime_cycle.size(); ++i)
      cycle.push_back(odometer_step(o.prime_cycle[(i + 1) % o.prime_cycle.size()]));
  }
  const auto p1 = seq.front().convert_to<std::int64_t>();
  o.diagram = FiniteRankDiagram({p1, p1}, prefix, cycle);

  auto odo = std::make_shared<Odometer>(o);  // the value function reads primes by level
  o.measure.diagram = o.diagram;
  o.measure.value = [odo](std::size_t level, std::uint32_t v) -> ExtValue {
    if (v == 0) return ExtValue::inf();
    Integer prod = 1;
    for (std::size_t n = 1; n <= level; ++n) prod *= odometer_prime(*odo, n);
    return ExtValue{FieldElement(Rational(Integer(1), prod)), false};
  };

  Integer pp = 1, pc = 1;
  for (const auto& p : o.prime_prefix) pp *= p;
  for (const auto& p : o.prime_cycle) pc *= p;
  o.svalues.H = group_from_generators(nullptr, {FieldElement(1)});
  o.svalues.lambda = FieldElement(Rational(pc));
  o.svalues.scale = FieldElement(Rational(Integer(1), pp));
  o.profile.kind = DefectiveProfile::Kind::cantor;
  o.profile.mass = DefectiveProfile::Mass::zero;
  return o;
}

Integer odometer_prime(const Odometer& o, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::precondition, "primes are indexed from 1");
  if (n <= o.prime_prefix.size()) return o.prime_prefix[n - 1];
  return o.prime_cycle[(n - 1 - o.prime_prefix.size()) % o.prime_cycle.size()];
}

Rational divergence_term(const Odometer& o, std::size_t n) {
  const auto& f = o.diagram.incidence(n);
  return Rational(f(1, 0), f(0, 0));
}

StationaryDiagram add_infinite_components(const StationaryDiagram& d, std::size_t alpha, std::size_t count) {
  if (count == 0) return d;
  const auto cd = class_decomposition(d);
  if (alpha >= cd.classes.size()) throw Error(ErrorKind::precondition, "no such class");
  const auto mu = ergodic_measure(d, alpha);
  const auto loop = (floor(mu.lam) + 1).convert_to<std::int64_t>();
  const auto n = static_cast<Eigen::Index>(d.vertex_count());
  const auto a0 = static_cast<Eigen::Index>(mu.alpha_vertices.front());
  IncidenceMatrix f = IncidenceMatrix::Zero(n + static_cast<Eigen::Index>(count), n + static_cast<Eigen::Index>(count));
  f.topLeftCorner(n, n) = d.F();
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(count); ++k) {
    f(n + k, n + k) = loop;
    f(a0, n + k) = 1;  // arc new -> α
  }
  return StationaryDiagram(f);
}

std::string to_string(AbstractGoodMeasure::Provenance p) {
  switch (p) {
    case AbstractGoodMeasure::Provenance::alphaZ_product: return "alphaZ_product";
    case AbstractGoodMeasure::Provenance::one_point_compactification: return "one_point_compactification";
    default: return "diagram";
  }
}

namespace {
AbstractGoodMeasure unbounded(const ClopenValuesSet& s, DefectiveProfile::Kind kind, AbstractGoodMeasure::Provenance p) {
  if (!s.bound) throw Error(ErrorKind::precondition, "expected the values set of a finite measure");
  AbstractGoodMeasure m;
  m.svalues = s;
  m.svalues.bound.reset();  // G[S] ∩ [0, ∞)
  m.profile.kind = kind;
  m.profile.mass = DefectiveProfile::Mass::zero;
  m.provenance = p;
  return m;
}
}  // namespace

AbstractGoodMeasure alphaZ_product(const ClopenValuesSet& s) {
  return unbounded(s, DefectiveProfile::Kind::cantor, AbstractGoodMeasure::Provenance::alphaZ_product);
}

AbstractGoodMeasure one_point_object(const ClopenValuesSet& s) {
  return unbounded(s, DefectiveProfile::Kind::single_point, AbstractGoodMeasure::Provenance::one_point_compactification);
}

CylinderSet minimal_path(const FiniteRankDiagram& d, std::size_t level, std::uint32_t vertex) {
  CylinderSet c;
  c.path.resize(level);
  for (std::size_t n = level; n >= 1; --n) {
    c.path[n - 1] = Step{vertex, 0};
    if (n > 1) vertex = edge_source(d, n - 1, vertex, 0);
  }
  return c;
}

CylinderSet vershik_successor(const FiniteRankDiagram& d, const CylinderSet& path) {
  for (std::size_t i = 0; i < path.level(); ++i) {
    const auto& s = path.path[i];
    if (s.edge + 1 < in_degree(d, i + 1, s.vertex)) {
      CylinderSet r = path;
      r.path[i].edge += 1;
      if (i > 0) {
        const auto src = edge_source(d, i, s.vertex, s.edge + 1);
        auto lo = minimal_path(d, i, src);
        std::copy(lo.path.begin(), lo.path.end(), r.path.begin());
      }
      return r;
    }
  }
  return path.level() == 0 ? path : minimal_path(d, path.level(), path.terminal_vertex());
}

}  // namespace bratteli
