#include "bratteli/classify.hpp"

#include <map>
#include <set>

namespace bratteli {

const char* to_string(GoodnessVerdict::Value v) {
  switch (v) {
    case GoodnessVerdict::Value::good: return "good";
    case GoodnessVerdict::Value::bad: return "bad";
    default: return "undetermined";
  }
}

const char* to_string(HomeoVerdict::Value v) {
  switch (v) {
    case HomeoVerdict::Value::homeomorphic: return "homeomorphic";
    case HomeoVerdict::Value::not_homeomorphic: return "not homeomorphic";
    default: return "undetermined";
  }
}

const char* to_string(HomeoVerdict::Reason r) {
  switch (r) {
    case HomeoVerdict::Reason::svalues_mismatch: return "svalues mismatch";
    case HomeoVerdict::Reason::defective_profile_mismatch: return "defective profile mismatch";
    case HomeoVerdict::Reason::goodness_mismatch: return "goodness mismatch";
    case HomeoVerdict::Reason::criteria_met: return "criteria met";
    default: return "inconclusive";
  }
}

GoodnessVerdict is_good(const ErgodicMeasure& mu, int bound) {
  std::vector<FieldElement> alpha_gens;
  for (auto v : mu.alpha_vertices) alpha_gens.push_back(mu.x[v]);
  const auto h = group_from_generators(mu.field, alpha_gens);
  GoodnessVerdict out;
  out.verdict = GoodnessVerdict::Value::good;
  for (auto i : mu.finite_vertices()) {
    if (mu.in_alpha(i)) continue;
    const auto r = lambda_closure_member(h, mu.lam, mu.x[i], bound);
    if (r.answer == Tri::yes) continue;
    if (r.answer == Tri::undetermined) {
      out.verdict = GoodnessVerdict::Value::undetermined;
      continue;
    }
    // x_i/λ^M is a cylinder value outside ⋃ λ^{-N} H, while every clopen subset of the
    // level-1 α cylinder has its measure inside it
    GoodnessWitness w;
    w.vertex = i;
    const auto a0 = static_cast<std::uint32_t>(mu.alpha_vertices.front());
    w.v = CylinderSet{{Step{a0, 0}}};
    const FieldElement cap = mu.x[a0] / mu.lam;
    std::size_t m = 1;
    while (!(mu.x[i] / pow(mu.lam, static_cast<int>(m)) < cap)) ++m;
    w.exponent = m;
    w.w = mu.scale * mu.x[i] / pow(mu.lam, static_cast<int>(m));
    w.u = minimal_path(FiniteRankDiagram::from_stationary(mu.diagram), m, static_cast<std::uint32_t>(i));
    out.verdict = GoodnessVerdict::Value::bad;
    out.witness = w;
    return out;
  }
  return out;
}

MeasureInvariants invariants(const ErgodicMeasure& mu, int bound) {
  MeasureInvariants m;
  const auto g = is_good(mu, bound).verdict;
  m.good = g == GoodnessVerdict::Value::good ? Tri::yes : g == GoodnessVerdict::Value::bad ? Tri::no : Tri::undetermined;
  m.svalues = clopen_values(mu);
  m.profile = defective_profile(mu);
  m.finite = mu.finite;
  return m;
}

MeasureInvariants invariants(const AbstractGoodMeasure& a) {
  MeasureInvariants m;
  m.good = Tri::yes;
  m.svalues = a.svalues;
  m.profile = a.profile;
  m.finite = a.svalues.bound.has_value();
  return m;
}

MeasureInvariants invariants(const Odometer& o) {
  MeasureInvariants m;
  m.good = Tri::yes;
  m.svalues = o.svalues;
  m.profile = o.profile;
  return m;
}

HomeoVerdict homeomorphic(const MeasureInvariants& a, const MeasureInvariants& b, int bound) {
  HomeoVerdict v;
  if ((a.good == Tri::yes && b.good == Tri::no) || (a.good == Tri::no && b.good == Tri::yes)) {
    v.verdict = HomeoVerdict::Value::not_homeomorphic;
    v.reason = HomeoVerdict::Reason::goodness_mismatch;
    v.detail = std::string("first measure is ") + (a.good == Tri::yes ? "good" : "bad") + ", second is " +
               (b.good == Tri::yes ? "good" : "bad");
    return v;
  }
  const Tri s = svalues_equal(a.svalues, b.svalues, bound);
  if (s == Tri::no) {
    v.verdict = HomeoVerdict::Value::not_homeomorphic;
    v.reason = HomeoVerdict::Reason::svalues_mismatch;
    v.detail = a.svalues.to_string() + " vs " + b.svalues.to_string();
    return v;
  }
  if (a.profile.definite() && b.profile.definite() && !(a.profile == b.profile)) {
    v.verdict = HomeoVerdict::Value::not_homeomorphic;
    v.reason = HomeoVerdict::Reason::defective_profile_mismatch;
    v.detail = a.profile.kind_string() + " (" + a.profile.mass_string() + ") vs " + b.profile.kind_string() + " (" +
               b.profile.mass_string() + ")";
    return v;
  }
  if (a.good == Tri::yes && b.good == Tri::yes && s == Tri::yes && a.profile.definite() && b.profile.definite()) {
    v.verdict = HomeoVerdict::Value::homeomorphic;
    v.reason = HomeoVerdict::Reason::criteria_met;
    return v;
  }
  if (a.good == Tri::no && b.good == Tri::no) v.detail = "both measures are bad; S and the profile do not decide";
  else if (s == Tri::undetermined) v.detail = "equality of clopen values sets not decided within the bound";
  else if (a.good == Tri::undetermined || b.good == Tri::undetermined) v.detail = "goodness not decided";
  else v.detail = "defective profile not determined";
  return v;
}

HomeoVerdict homeomorphic(const ErgodicMeasure& mu, const ErgodicMeasure& nu, int bound) {
  return homeomorphic(invariants(mu, bound), invariants(nu, bound), bound);
}

HomeoVerdict homeomorphic(const AbstractGoodMeasure& a, const AbstractGoodMeasure& b, int bound) {
  return homeomorphic(invariants(a), invariants(b), bound);
}

WeakHomeoResult weakly_homeomorphic(const MeasureInvariants& a, const MeasureInvariants& b, int bound) {
  WeakHomeoResult r;
  if (a.good != Tri::yes || b.good != Tri::yes || !a.profile.definite() || !b.profile.definite()) {
    r.detail = "needs two good measures with definite profiles";
    return r;
  }
  if (!(a.profile == b.profile) || a.finite != b.finite) {
    r.verdict = Tri::no;
    r.detail = "defective profiles differ";
    return r;
  }
  auto [sa, sb] = common_presentation(a.svalues, b.svalues);
  if (sa.H.rank() != sb.H.rank()) {
    r.verdict = Tri::no;
    r.detail = "ranks differ";
    return r;
  }
  std::vector<FieldElement> cand;
  if (sa.bound) {
    cand.push_back(*sa.bound / *sb.bound);  // forced by the bounds
  } else {
    for (const auto& ha : sa.H.basis())
      for (const auto& hb : sb.H.basis()) cand.push_back(abs(sa.scale * ha / (sb.scale * hb)));
  }
  bool open = false;
  for (const auto& c : cand) {
    const Tri t = svalues_equal(sa, scaled(sb, c), bound);
    if (t == Tri::yes) {
      r.verdict = Tri::yes;
      r.c = c;
      return r;
    }
    if (t == Tri::undetermined) open = true;
  }
  // bounded sets fix c; rational rank-1 sets are unit multiples of any generator ratio
  const bool rank1 = !sa.field && sa.H.rank() == 1;
  if (!open && (sa.bound || rank1)) {
    r.verdict = Tri::no;
    r.detail = "no positive c with S(mu) = c S(nu)";
  } else {
    r.detail = "generator-ratio candidates exhausted";
  }
  return r;
}

Tri good_order_exists(const MeasureInvariants& m) {
  if (m.finite) throw Error(ErrorKind::not_applicable, "good orders are asked about for infinite measures");
  if (!m.profile.definite()) return Tri::undetermined;
  return m.profile.kind == DefectiveProfile::Kind::single_point ? Tri::yes : Tri::no;
}

namespace {

std::vector<ClopenSet> split_at(const FiniteRankDiagram& d, const ClopenSet& a, std::size_t level, std::size_t cap) {
  if (a.empty()) return {};
  const ClopenSet la = a.level() < level ? lift(d, a, level, cap) : a;
  std::map<std::vector<Step>, std::vector<CylinderSet>> by_prefix;
  for (const auto& c : la.cylinders())
    by_prefix[std::vector<Step>(c.path.begin(), c.path.begin() + static_cast<long>(level))].push_back(c);
  std::vector<ClopenSet> out;
  for (auto& [k, cs] : by_prefix) out.push_back(clopen_normalize(d, cs, cap));
  return out;
}

std::string describe(const ClopenSet& c) {
  std::string s = "level " + std::to_string(c.level()) + " {";
  for (std::size_t i = 0; i < c.cylinders().size(); ++i) {
    if (i) s += ", ";
    if (i == 4) {
      s += "...";
      break;
    }
    for (const auto& st : c.cylinders()[i].path) s += std::to_string(st.vertex) + ":" + std::to_string(st.edge) + " ";
  }
  return s + "}";
}

[[noreturn]] void fail(const std::string& why, const ClopenSet& cell) {
  throw Error(ErrorKind::certificate_failure, why + " at cell " + describe(cell));
}

// Partition b into pieces with the given measures.
std::vector<ClopenSet> match(const PathMeasure& nu, const ClopenSet& b, const std::vector<ExtValue>& vals,
                             const EnumerationBudget& budget, const ClopenSet& source) {
  if (vals.size() == 1) return {b};
  bool any_inf = false;
  for (const auto& v : vals) any_inf = any_inf || v.infinite;
  if (!any_inf) {
    std::vector<FieldElement> parts;
    for (const auto& v : vals) parts.push_back(v.value);
    auto r = refinability_check(nu, b, parts, budget);
    if (r.status != SearchStatus::found) fail(std::string("refinement ") + to_string(r.status), source);
    return r.parts;
  }
  std::vector<ClopenSet> out(vals.size());
  ClopenSet rest = b;
  std::vector<std::size_t> inf_idx;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i].infinite) {
      inf_idx.push_back(i);
      continue;
    }
    auto r = subset_search(nu, rest, vals[i].value, budget);
    if (r.status != SearchStatus::found) fail(std::string("subset search ") + to_string(r.status), source);
    out[i] = r.set;
    if (!r.set.empty()) rest = subtract(nu.diagram, rest, r.set);
  }
  for (std::size_t level = std::max<std::size_t>(rest.level(), 1); level <= budget.max_level; ++level) {
    const auto lr = lift(nu.diagram, rest, level, budget.max_cells);
    std::vector<CylinderSet> inf, fin;
    for (const auto& c : lr.cylinders()) (cylinder_measure(nu, c).infinite ? inf : fin).push_back(c);
    if (inf.size() < inf_idx.size()) continue;
    for (std::size_t k = 0; k + 1 < inf_idx.size(); ++k) out[inf_idx[k]] = ClopenSet::of(inf[k]);
    std::vector<CylinderSet> last(inf.begin() + static_cast<long>(inf_idx.size() - 1), inf.end());
    last.insert(last.end(), fin.begin(), fin.end());
    out[inf_idx.back()] = clopen_normalize(nu.diagram, last, budget.max_cells);
    return out;
  }
  fail("not enough infinite cylinders", source);
}

}  // namespace

BackForthCertificate back_and_forth(const PathMeasure& mu, const PathMeasure& nu, std::size_t depth,
                                    const EnumerationBudget& budget) {
  BackForthCertificate cert;
  cert.depth = depth;
  const auto whole = ClopenSet::whole();
  const auto m0 = clopen_measure(mu, whole);
  if (!(m0 == clopen_measure(nu, whole))) fail("total masses differ", whole);
  cert.stages.push_back(BackForthStage{{whole}, {whole}, {0}, {m0}});
  for (std::size_t j = 1; j <= depth; ++j) {
    const bool forth = j % 2 == 1;
    const auto& prev = cert.stages.back();
    const PathMeasure& src = forth ? mu : nu;
    const PathMeasure& dst = forth ? nu : mu;
    BackForthStage next;
    for (std::size_t p = 0; p < prev.x.size(); ++p) {
      const ClopenSet& a = forth ? prev.x[p] : prev.y[p];
      const ClopenSet& b = forth ? prev.y[p] : prev.x[p];
      auto subs = split_at(src.diagram, a, j, budget.max_cells);
      if (subs.empty()) subs.push_back(a);  // empty cell stays empty
      std::vector<ExtValue> vals;
      for (const auto& s : subs) vals.push_back(clopen_measure(src, s));
      auto parts = match(dst, b, vals, budget, a);
      for (std::size_t i = 0; i < subs.size(); ++i) {
        next.x.push_back(forth ? subs[i] : parts[i]);
        next.y.push_back(forth ? parts[i] : subs[i]);
        next.parent.push_back(p);
        next.measure.push_back(vals[i]);
      }
    }
    cert.stages.push_back(std::move(next));
  }
  return cert;
}

namespace {

// Empty string when the cells partition the whole path space.
std::string check_partition(const FiniteRankDiagram& d, const std::vector<ClopenSet>& cells, std::size_t cap) {
  std::size_t level = 0;
  for (const auto& c : cells) level = std::max(level, c.level());
  std::set<CylinderSet> seen;
  for (const auto& c : cells) {
    if (c.empty()) continue;
    const auto lc = lift(d, c, level, cap);
    for (const auto& cyl : lc.cylinders())
      if (!seen.insert(cyl).second) return "cells overlap";
  }
  Integer total = 0;
  for (const auto& h : path_counts(d, level)) total += h;
  if (level == 0) total = 1;
  if (Integer(static_cast<unsigned long>(seen.size())) != total) return "cells do not cover the space";
  return "";
}

}  // namespace

std::string verify(const BackForthCertificate& cert, const PathMeasure& mu, const PathMeasure& nu, std::size_t cap) {
  if (cert.stages.empty()) return "no stages";
  if (cert.stages.size() != cert.depth + 1) return "stage count does not match depth";
  for (std::size_t s = 0; s < cert.stages.size(); ++s) {
    const auto& st = cert.stages[s];
    const std::string at = "stage " + std::to_string(s) + ": ";
    if (st.x.size() != st.y.size() || st.parent.size() != st.x.size() || st.measure.size() != st.x.size())
      return at + "ragged stage";
    if (auto e = check_partition(mu.diagram, st.x, cap); !e.empty()) return at + "first side " + e;
    if (auto e = check_partition(nu.diagram, st.y, cap); !e.empty()) return at + "second side " + e;
    for (std::size_t i = 0; i < st.x.size(); ++i) {
      const auto mx = clopen_measure(mu, st.x[i]), my = clopen_measure(nu, st.y[i]);
      if (!(mx == my) || !(mx == st.measure[i])) return at + "measures differ for pair " + std::to_string(i);
      if (s == 0) continue;
      const auto& pr = cert.stages[s - 1];
      if (st.parent[i] >= pr.x.size()) return at + "bad parent index";
      if (!subset(mu.diagram, st.x[i], pr.x[st.parent[i]]) || !subset(nu.diagram, st.y[i], pr.y[st.parent[i]]))
        return at + "pair " + std::to_string(i) + " does not refine its parent";
    }
  }
  return "";
}

}  // namespace bratteli
