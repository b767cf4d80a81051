#include "bratteli/measure.hpp"

#include "bratteli/linear.hpp"

#include <algorithm>
#include <memory>

namespace bratteli {

namespace {

Eigen::Index ix(std::size_t v) { return static_cast<Eigen::Index>(v); }

bool trivial(const StationaryDiagram& d, const std::vector<std::size_t>& cls) { return is_trivial_class(d, cls); }

// Shared classification and extension for a class α whose entries on α are given.
ErgodicMeasure build(const StationaryDiagram& d, const ClassDecomposition& cd, std::size_t alpha,
                     const AlgebraicNumber& lambda, const std::vector<FieldElement>& xa) {
  const std::size_t n = d.vertex_count();
  ErgodicMeasure mu;
  mu.diagram = d;
  mu.alpha = alpha;
  mu.alpha_vertices = cd.classes[alpha];
  mu.lambda = lambda;
  mu.field = NumberField::make(lambda);
  mu.lam = mu.field ? FieldElement::generator(mu.field) : FieldElement(lambda.to_rational());
  mu.kind.assign(n, VertexKind::null);
  mu.x.assign(n, FieldElement(0));
  for (std::size_t i = 0; i < mu.alpha_vertices.size(); ++i) {
    mu.kind[mu.alpha_vertices[i]] = VertexKind::finite;
    mu.x[mu.alpha_vertices[i]] = xa[i];
  }
  const auto& f = d.F();
  // downstream classes first
  auto order = cd.topological_order();
  std::reverse(order.begin(), order.end());
  for (auto beta : order) {
    if (beta == alpha || !cd.precedes(beta, alpha)) continue;
    const auto& cls = cd.classes[beta];
    bool inf = false;
    for (auto g : cd.successors(d, beta))
      if (cd.precedes(g, alpha) && mu.kind[cd.classes[g][0]] == VertexKind::infinite) inf = true;
    if (!inf && !trivial(d, cls)) inf = compare(perron_root(class_block(d, cls)), lambda) >= 0;
    if (inf) {
      for (auto v : cls) mu.kind[v] = VertexKind::infinite;
      continue;
    }
    // (λ I - A_β) x_β = Σ_{w ∉ β} A_vw x_w
    const auto k = ix(cls.size());
    Matrix<FieldElement> m(k, k);
    Vector<FieldElement> b(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto v = cls[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < k; ++j)
        m(i, j) = FieldElement(-f(ix(cls[static_cast<std::size_t>(j)]), ix(v))) + (i == j ? mu.lam : FieldElement(0));
      FieldElement acc(0);
      for (std::size_t w = 0; w < n; ++w)
        if (cd.class_of[w] != beta && f(ix(w), ix(v)) > 0 && mu.kind[w] == VertexKind::finite)
          acc += FieldElement(f(ix(w), ix(v))) * mu.x[w];
      b(i) = acc;
    }
    auto sol = solve(m, b);
    if (!sol) throw Error(ErrorKind::unsupported_spectrum, "extension solve is singular on class " + std::to_string(beta));
    for (Eigen::Index i = 0; i < k; ++i) {
      const auto& xi = (*sol)(i);
      if (xi.sign() <= 0)
        throw Error(ErrorKind::unsupported_spectrum,
                    "extension entry on vertex " + std::to_string(cls[static_cast<std::size_t>(i)]) + " is not positive");
      mu.kind[cls[static_cast<std::size_t>(i)]] = VertexKind::finite;
      mu.x[cls[static_cast<std::size_t>(i)]] = xi;
    }
  }
  mu.finite = std::none_of(mu.kind.begin(), mu.kind.end(), [](VertexKind k) { return k == VertexKind::infinite; });
  const auto r = d.root_edges();
  FieldElement s(0);
  for (std::size_t v = 0; v < n; ++v)
    if (mu.kind[v] == VertexKind::finite) s += FieldElement(r[v]) * mu.x[v];
  mu.raw_mass = s / mu.lam;
  return mu;
}

struct AlphaData {
  AlgebraicNumber lambda;
  bool ok = false;
};

AlphaData alpha_lambda(const StationaryDiagram& d, const ClassDecomposition& cd, std::size_t alpha) {
  const auto& cls = cd.classes[alpha];
  if (trivial(d, cls)) return {};
  auto lambda = perron_root(class_block(d, cls));
  if (compare(lambda, AlgebraicNumber(Rational(1))) <= 0) return {};
  if (class_period(d, cls) > 1)
    throw Error(ErrorKind::unsupported_spectrum, "class " + std::to_string(alpha) + " has period " +
                                                     std::to_string(class_period(d, cls)) +
                                                     "; telescope the diagram by the period first");
  return {lambda, true};
}

}  // namespace

std::vector<std::size_t> ErgodicMeasure::finite_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < kind.size(); ++v)
    if (kind[v] == VertexKind::finite) out.push_back(v);
  return out;
}

std::vector<std::size_t> ErgodicMeasure::infinite_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < kind.size(); ++v)
    if (kind[v] == VertexKind::infinite) out.push_back(v);
  return out;
}

bool ErgodicMeasure::in_alpha(std::size_t v) const {
  return std::find(alpha_vertices.begin(), alpha_vertices.end(), v) != alpha_vertices.end();
}

ErgodicMeasure ergodic_measure(const StationaryDiagram& d, std::size_t alpha) {
  const auto cd = class_decomposition(d);
  if (alpha >= cd.size()) throw Error(ErrorKind::input, "no class " + std::to_string(alpha));
  auto data = alpha_lambda(d, cd, alpha);
  if (!data.ok) throw Error(ErrorKind::not_applicable, "class " + std::to_string(alpha) + " carries no ergodic measure");
  const auto& cls = cd.classes[alpha];
  auto field = NumberField::make(data.lambda);
  FieldElement lam = field ? FieldElement::generator(field) : FieldElement(data.lambda.to_rational());
  const auto k = ix(cls.size());
  Matrix<FieldElement> m(k, k);
  const auto blk = class_block(d, cls);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) m(i, j) = FieldElement(blk(i, j)) - (i == j ? lam : FieldElement(0));
  auto ns = nullspace(m);
  if (ns.cols() != 1) throw Error(ErrorKind::unsupported_spectrum, "Perron eigenspace of class " + std::to_string(alpha) + " is not one-dimensional");
  std::vector<FieldElement> xa;
  for (Eigen::Index i = 0; i < k; ++i) xa.push_back(ns(i, 0) / ns(0, 0));
  return build(d, cd, alpha, data.lambda, xa);
}

ErgodicMeasure ergodic_measure_from(const StationaryDiagram& d, std::size_t alpha,
                                    const std::vector<FieldElement>& xa) {
  auto base = ergodic_measure(d, alpha);
  if (xa.size() != base.alpha_vertices.size()) throw Error(ErrorKind::precondition, "wrong number of eigenvector entries");
  const auto blk = class_block(d, base.alpha_vertices);
  for (std::size_t i = 0; i < xa.size(); ++i) {
    FieldElement acc(0);
    for (std::size_t j = 0; j < xa.size(); ++j) acc += FieldElement(blk(ix(i), ix(j))) * lift(xa[j], base.field);
    if (xa[i].sign() <= 0 || acc != base.lam * xa[i])
      throw Error(ErrorKind::precondition, "entries are not a positive Perron eigenvector");
  }
  return build(d, class_decomposition(d), alpha, base.lambda, xa);
}

std::vector<ErgodicMeasure> ergodic_measures(const StationaryDiagram& d) {
  const auto cd = class_decomposition(d);
  std::vector<ErgodicMeasure> out;
  for (std::size_t a = 0; a < cd.size(); ++a)
    if (alpha_lambda(d, cd, a).ok) out.push_back(ergodic_measure(d, a));
  return out;
}

ErgodicMeasure rescaled(const ErgodicMeasure& mu, const FieldElement& c) {
  if (c.sign() <= 0) throw Error(ErrorKind::precondition, "scale must be positive");
  auto r = mu;
  r.scale = mu.scale * c;
  return r;
}

ErgodicMeasure canonical(const ErgodicMeasure& mu) {
  auto r = mu;
  r.scale = FieldElement(1) / mu.raw_mass;
  return r;
}

ExtValue vertex_value(const ErgodicMeasure& mu, std::size_t vertex, std::size_t level) {
  switch (mu.kind.at(vertex)) {
    case VertexKind::infinite: return ExtValue::inf();
    case VertexKind::null: return ExtValue{FieldElement(0), false};
    default: return ExtValue{mu.scale * mu.x[vertex] / pow(mu.lam, static_cast<int>(level)), false};
  }
}

ExtValue cylinder_measure(const ErgodicMeasure& mu, const CylinderSet& c) {
  if (c.level() == 0) return mu.finite ? ExtValue{total_mass(mu), false} : ExtValue::inf();
  return vertex_value(mu, c.terminal_vertex(), c.level());
}

ExtValue clopen_measure(const ErgodicMeasure& mu, const ClopenSet& u) {
  ExtValue acc{FieldElement(0), false};
  for (const auto& c : u.cylinders()) {
    acc = acc + cylinder_measure(mu, c);
    if (acc.infinite) break;
  }
  return acc;
}

FieldElement total_mass(const ErgodicMeasure& mu) { return mu.scale * mu.raw_mass; }

namespace {
std::vector<Integer> finite_path_counts(const ErgodicMeasure& mu, std::size_t level) {
  const auto& d = mu.diagram;
  const auto n = d.vertex_count();
  const auto r = d.root_edges();
  std::vector<Integer> h(n, Integer(0));
  for (std::size_t v = 0; v < n; ++v)
    if (mu.kind[v] == VertexKind::finite) h[v] = r[v];
  for (std::size_t l = 1; l < level; ++l) {
    std::vector<Integer> next(n, Integer(0));
    for (std::size_t u = 0; u < n; ++u) {
      if (mu.kind[u] != VertexKind::finite) continue;
      for (std::size_t w = 0; w < n; ++w)
        if (d.F()(ix(u), ix(w))) next[u] += Integer(d.F()(ix(u), ix(w))) * h[w];
    }
    h = std::move(next);
  }
  return h;
}
}  // namespace

FieldElement total_mass_at(const ErgodicMeasure& mu, std::size_t level) {
  const auto h = finite_path_counts(mu, level);
  FieldElement s(0);
  for (std::size_t v = 0; v < h.size(); ++v)
    if (mu.kind[v] == VertexKind::finite) s += FieldElement(h[v]) * mu.x[v];
  return mu.scale * s / pow(mu.lam, static_cast<int>(level));
}

std::vector<Integer> infinite_cylinder_counts(const ErgodicMeasure& mu, std::size_t level) {
  const auto all = path_counts(FiniteRankDiagram::from_stationary(mu.diagram), level);
  const auto fin = finite_path_counts(mu, level);
  std::vector<Integer> out(all.size());
  for (std::size_t v = 0; v < all.size(); ++v) out[v] = all[v] - fin[v];
  return out;
}

ExtValue vertex_value(const MeasureSum& m, std::size_t vertex, std::size_t level) {
  if (m.terms.empty()) throw Error(ErrorKind::precondition, "empty measure sum");
  ExtValue acc{FieldElement(0), false};
  for (const auto& [mu, w] : m.terms) {
    auto v = vertex_value(mu, vertex, level);
    acc = acc + (v.infinite ? v : ExtValue{FieldElement(w) * v.value, false});
  }
  return acc;
}

ExtValue cylinder_measure(const MeasureSum& m, const CylinderSet& c) {
  if (c.level() == 0) {
    ExtValue acc{FieldElement(0), false};
    for (const auto& [mu, w] : m.terms) {
      auto v = cylinder_measure(mu, c);
      acc = acc + (v.infinite ? v : ExtValue{FieldElement(w) * v.value, false});
    }
    return acc;
  }
  return vertex_value(m, c.terminal_vertex(), c.level());
}

// ---- defective profiles ----

std::string DefectiveProfile::kind_string() const {
  switch (kind) {
    case Kind::empty: return "empty";
    case Kind::single_point: return "single_point";
    case Kind::finite: return "finite(" + std::to_string(count) + ")";
    case Kind::cantor: return "cantor";
    case Kind::cantor_plus_finite: return "cantor_plus_finite(" + std::to_string(count) + ")";
    default: return "unknown";
  }
}

std::string DefectiveProfile::mass_string() const {
  switch (mass) {
    case Mass::zero: return "zero";
    case Mass::finite_positive: return "finite_positive";
    default: return "infinite";
  }
}

DefectiveProfile::Kind defect_kind(const StationaryDiagram& d, const std::vector<bool>& in, std::size_t& count) {
  using Kind = DefectiveProfile::Kind;
  count = 0;
  const auto cd = class_decomposition(d);
  const auto& f = d.F();
  // 0 trivial, 1 single cycle, 2 branching
  std::vector<int> type(cd.size(), -1);
  for (std::size_t c = 0; c < cd.size(); ++c) {
    if (!in[cd.classes[c][0]]) continue;
    const auto& cls = cd.classes[c];
    if (trivial(d, cls)) {
      type[c] = 0;
      continue;
    }
    const auto blk = class_block(d, cls);
    bool simple = true;
    for (Eigen::Index i = 0; i < blk.rows(); ++i)
      if (blk.row(i).sum() != 1) simple = false;
    type[c] = simple ? 1 : 2;
  }
  bool branching = false;
  for (auto t : type) branching = branching || t == 2;

  auto nontrivial_strictly = [&](std::size_t c, bool upstream) {
    for (std::size_t o = 0; o < cd.size(); ++o)
      if (o != c && type[o] > 0 && (upstream ? cd.precedes(o, c) : cd.precedes(c, o))) return true;
    return false;
  };

  // root paths ending at each vertex that visit only trivial classes of the set
  std::vector<Integer> e(d.vertex_count(), Integer(0));
  const auto r = d.root_edges();
  auto order = cd.topological_order();
  for (auto c : order) {
    if (type[c] < 0) continue;
    for (auto u : cd.classes[c]) {
      Integer acc = r[u];
      for (std::size_t w = 0; w < d.vertex_count(); ++w)
        if (f(ix(u), ix(w)) > 0 && type[cd.class_of[w]] == 0) acc += Integer(f(ix(u), ix(w))) * e[w];
      e[u] = acc;
    }
  }

  Integer isolated = 0;
  for (std::size_t c = 0; c < cd.size(); ++c) {
    if (type[c] != 1) continue;
    const bool down = nontrivial_strictly(c, false);
    if (down) {
      if (!branching) return Kind::unknown;  // countably many accumulating paths
      continue;                              // limit of later exits, not isolated
    }
    if (nontrivial_strictly(c, true)) return Kind::unknown;
    for (auto u : cd.classes[c]) isolated += e[u];
  }
  if (isolated > Integer(static_cast<long>(1) << 40)) return Kind::unknown;
  count = static_cast<std::size_t>(isolated.convert_to<long>());
  if (branching) return count == 0 ? Kind::cantor : Kind::cantor_plus_finite;
  if (count == 0) return Kind::empty;
  return count == 1 ? Kind::single_point : Kind::finite;
}

namespace {
DefectiveProfile profile_for(const StationaryDiagram& d, const std::vector<bool>& in,
                             const std::vector<std::pair<const ErgodicMeasure*, Rational>>& terms) {
  DefectiveProfile p;
  p.kind = defect_kind(d, in, p.count);
  // μ_i lives on paths eventually in α_i, and the set is upstream closed: μ_i(𝔐) is
  // its full mass when α_i lies in the set and 0 otherwise.
  bool inf = false;
  FieldElement mass(0);
  for (const auto& [mu, w] : terms) {
    if (!in[mu->alpha_vertices[0]]) continue;
    if (!mu->finite) {
      inf = true;
      continue;
    }
    mass += FieldElement(w) * total_mass(*mu);
  }
  if (inf) {
    p.mass = DefectiveProfile::Mass::infinite;
  } else if (mass.is_zero()) {
    p.mass = DefectiveProfile::Mass::zero;
    p.mass_value = mass;
  } else {
    p.mass = DefectiveProfile::Mass::finite_positive;
    p.mass_value = mass;
  }
  return p;
}
}  // namespace

DefectiveProfile defective_profile(const ErgodicMeasure& mu) {
  std::vector<bool> in(mu.kind.size());
  for (std::size_t v = 0; v < in.size(); ++v) in[v] = mu.kind[v] == VertexKind::infinite;
  return profile_for(mu.diagram, in, {{&mu, Rational(1)}});
}

DefectiveProfile defective_profile(const MeasureSum& m) {
  if (m.terms.empty()) throw Error(ErrorKind::precondition, "empty measure sum");
  const auto& d = m.terms.front().first.diagram;
  std::vector<bool> in(d.vertex_count(), false);
  std::vector<std::pair<const ErgodicMeasure*, Rational>> terms;
  for (const auto& [mu, w] : m.terms) {
    if (!(mu.diagram == d)) throw Error(ErrorKind::precondition, "measure sum mixes diagrams");
    if (w <= 0) throw Error(ErrorKind::precondition, "weights must be positive");
    for (std::size_t v = 0; v < in.size(); ++v) in[v] = in[v] || mu.kind[v] == VertexKind::infinite;
    terms.emplace_back(&mu, w);
  }
  return profile_for(d, in, terms);
}

// ---- path measures ----

PathMeasure path_measure(const ErgodicMeasure& mu) {
  auto powers = std::make_shared<std::vector<FieldElement>>(1, FieldElement(1));
  auto inv = FieldElement(1) / mu.lam;
  auto m = std::make_shared<ErgodicMeasure>(mu);
  PathMeasure pm;
  pm.diagram = FiniteRankDiagram::from_stationary(mu.diagram);
  pm.value = [m, powers, inv](std::size_t level, std::uint32_t v) -> ExtValue {
    switch (m->kind.at(v)) {
      case VertexKind::infinite: return ExtValue::inf();
      case VertexKind::null: return ExtValue{FieldElement(0), false};
      default: break;
    }
    while (powers->size() <= level) powers->push_back(powers->back() * inv);
    return ExtValue{m->scale * m->x[v] * (*powers)[level], false};
  };
  return pm;
}

PathMeasure path_measure(const MeasureSum& m) {
  if (m.terms.empty()) throw Error(ErrorKind::precondition, "empty measure sum");
  std::vector<std::pair<PathMeasure, Rational>> parts;
  for (const auto& [mu, w] : m.terms) parts.emplace_back(path_measure(mu), w);
  PathMeasure pm;
  pm.diagram = parts.front().first.diagram;
  pm.value = [parts](std::size_t level, std::uint32_t v) {
    ExtValue acc{FieldElement(0), false};
    for (const auto& [p, w] : parts) {
      auto x = p.value(level, v);
      acc = acc + (x.infinite ? x : ExtValue{FieldElement(w) * x.value, false});
    }
    return acc;
  };
  return pm;
}

ExtValue cylinder_measure(const PathMeasure& m, const CylinderSet& c) {
  if (c.level() == 0) {
    ExtValue acc{FieldElement(0), false};
    const auto& r = m.diagram.root_edges();
    for (std::uint32_t v = 0; v < r.size(); ++v) {
      auto x = m.value(1, v);
      acc = acc + (x.infinite ? x : ExtValue{FieldElement(r[v]) * x.value, false});
    }
    return acc;
  }
  return m.value(c.level(), c.terminal_vertex());
}

ExtValue clopen_measure(const PathMeasure& m, const ClopenSet& u) {
  ExtValue acc{FieldElement(0), false};
  for (const auto& c : u.cylinders()) {
    acc = acc + cylinder_measure(m, c);
    if (acc.infinite) break;
  }
  return acc;
}

}  // namespace bratteli
