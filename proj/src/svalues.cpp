#include "bratteli/svalues.hpp"

#include "bratteli/compose.hpp"

#include <algorithm>
#include <set>

namespace bratteli {

std::string ClopenValuesSet::to_string() const {
  std::string s = scale == FieldElement(1) ? "" : scale.to_string() + " * ";
  s += "U_N " + (lambda == FieldElement(1) ? std::string("") : "(" + lambda.to_string() + ")^-N ") + H.to_string();
  if (bound) s += " within [0, " + bound->to_string() + "]";
  else s += " within [0, inf)";
  return s;
}

ClopenValuesSet clopen_values(const ErgodicMeasure& mu) {
  ClopenValuesSet s;
  s.field = mu.field;
  std::vector<FieldElement> gens;
  for (auto v : mu.finite_vertices()) gens.push_back(mu.x[v]);
  s.H = group_from_generators(mu.field, gens);
  s.lambda = mu.lam;
  s.scale = mu.scale;
  if (mu.finite) s.bound = total_mass(mu);
  return s;
}

ClopenValuesSet grouplike_from_rationals(const std::vector<Rational>& gens) {
  if (gens.empty()) throw Error(ErrorKind::input, "no generators");
  std::vector<FieldElement> g;
  Integer l = 1;
  for (const auto& r : gens) {
    if (r < 0) throw Error(ErrorKind::input, "generators must be nonnegative");
    g.emplace_back(r);
    l = lcm(l, den(r));
  }
  ClopenValuesSet s;
  s.H = group_from_generators(nullptr, g);
  s.lambda = FieldElement(l);
  return s;
}

ClopenValuesSet scaled(const ClopenValuesSet& s, const FieldElement& c) {
  if (c.sign() <= 0) throw Error(ErrorKind::precondition, "scale must be positive");
  auto r = s;
  r.scale = s.scale * c;
  if (r.bound) r.bound = *r.bound * c;
  if (c.field() && !r.field) {
    r.field = c.field();
    r.H = embed(r.H, r.field, FieldElement(0));
    r.lambda = lift(r.lambda, r.field);
  }
  return r;
}

Tri svalues_member(const ClopenValuesSet& s, const FieldElement& v, int bound) {
  const int sg = v.sign();
  if (sg < 0) return Tri::no;
  if (sg == 0) return Tri::yes;
  if (s.bound && v > *s.bound) return Tri::no;
  if (v.field() && s.field && !same_field(v.field(), s.field))
    throw Error(ErrorKind::unsupported_field, "value lies in a different field");
  if (v.field() && !s.field) return Tri::no;  // irrational value, rational set
  return lambda_closure_member(s.H, s.lambda, v / s.scale, bound).answer;
}

namespace {

FieldElement move(const FieldElement& x, const FieldPtr& src, const CompositeField& c, bool first) {
  if (!src) return lift(FieldElement(x.is_rational() ? x.to_rational() : Rational(0)), c.field);
  return embed(x, first ? c.image_a : c.image_b);
}

ClopenValuesSet move_set(const ClopenValuesSet& s, const CompositeField& c, bool first) {
  ClopenValuesSet r;
  r.field = c.field;
  const FieldElement img = s.field ? (first ? c.image_a : c.image_b) : FieldElement(0);
  r.H = s.field ? embed(s.H, c.field, img) : embed(s.H, c.field, FieldElement(0));
  r.lambda = move(s.lambda, s.field, c, first);
  r.scale = move(s.scale, s.field, c, first);
  if (s.bound) r.bound = move(*s.bound, s.field, c, first);
  return r;
}

Tri meet(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::undetermined || b == Tri::undetermined) return Tri::undetermined;
  return Tri::yes;
}

// scale·closure as a group contains t·h for every basis element h of `hs`.
Tri group_contains(const ClopenValuesSet& s, const FinGenSubgroup& hs, const FieldElement& t, int bound) {
  Tri r = Tri::yes;
  for (const auto& h : hs.basis()) {
    r = meet(r, lambda_closure_member(s.H, s.lambda, t * h / s.scale, bound).answer);
    if (r == Tri::no) break;
  }
  return r;
}

}  // namespace

std::pair<ClopenValuesSet, ClopenValuesSet> common_presentation(const ClopenValuesSet& a, const ClopenValuesSet& b) {
  if (same_field(a.field, b.field)) return {a, b};
  auto c = compose_fields(a.field, b.field);
  return {move_set(a, c, true), move_set(b, c, false)};
}

// With T_i = s_i ⋃ λ_i^{-N} H_i: T1 = T2 iff s1 H1 ⊆ T2, λ1^{-1} s2 H2 ⊆ T2 and the
// symmetric pair. Sufficiency: the second condition makes T2 stable under λ1^{-1}.
Tri svalues_equal(const ClopenValuesSet& a0, const ClopenValuesSet& b0, int bound) {
  auto [a, b] = common_presentation(a0, b0);
  if (a.bound.has_value() != b.bound.has_value()) return Tri::no;
  if (a.bound && *a.bound != *b.bound) return Tri::no;
  if (a.H.rank() != b.H.rank()) return Tri::no;  // the closure keeps the Q-span of H
  Tri r = group_contains(b, a.H, a.scale, bound);
  if (r == Tri::no) return r;
  r = meet(r, group_contains(a, b.H, b.scale, bound));
  if (r == Tri::no) return r;
  r = meet(r, group_contains(b, b.H, b.scale / a.lambda, bound));
  if (r == Tri::no) return r;
  return meet(r, group_contains(a, a.H, a.scale / b.lambda, bound));
}

ClopenValuesSet product_svalues(const ClopenValuesSet& a0, const ClopenValuesSet& b0) {
  auto [a, b] = common_presentation(a0, b0);
  ClopenValuesSet r;
  r.field = a.field;
  std::vector<FieldElement> gens;
  for (const auto& x : a.H.basis())
    for (const auto& y : b.H.basis()) gens.push_back(x * y);
  r.H = group_from_generators(r.field, gens);
  r.lambda = a.lambda * b.lambda;
  r.scale = a.scale * b.scale;
  if (a.bound && b.bound) r.bound = *a.bound * *b.bound;
  return r;
}

GroupLikeCheck is_group_like_truncated(const GroupLikeFinite& d) {
  const std::set<Rational> s(d.values.begin(), d.values.end());
  GroupLikeCheck c;
  c.difference_closed = true;
  for (std::size_t i = 0; i < d.values.size() && c.difference_closed; ++i)
    for (std::size_t j = i; j < d.values.size(); ++j)
      if (!s.count(d.values[j] - d.values[i])) {
        c.difference_closed = false;
        break;
      }
  c.wraps_to_group = true;
  for (const auto& g : d.values) {
    if (g == 0) continue;
    // closed under subtraction modulo g on representatives in [0, g]
    for (const auto& a : d.values) {
      if (a > g || !c.wraps_to_group) break;
      for (const auto& b : d.values) {
        if (b > g) break;
        Rational t = a - b;
        if (t < 0) t += g;
        if (!s.count(t)) {
          c.wraps_to_group = false;
          break;
        }
      }
    }
    if (!c.wraps_to_group) break;
  }
  return c;
}

bool PrimeMultiset::infinite() const {
  return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return !e.second.has_value(); });
}

std::string PrimeMultiset::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [p, m] : entries) {
    s += (first ? "" : ", ") + bratteli::to_string(p) + ": " + (m ? std::to_string(*m) : std::string("inf"));
    first = false;
  }
  return s + "}";
}

std::map<Integer, unsigned> factor(Integer n) {
  if (n <= 0) throw Error(ErrorKind::precondition, "factor needs a positive integer");
  std::map<Integer, unsigned> out;
  long work = 0;
  for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (++work > 20000000) throw Error(ErrorKind::unsupported, "integer too large to factor by trial division");
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

PrimeMultiset rec_set(const ClopenValuesSet& d) {
  if (d.field || !d.lambda.is_rational() || !d.scale.is_rational() || d.H.rank() > 1)
    throw Error(ErrorKind::unsupported, "Rec(D) needs rational generators");
  if (d.H.rank() == 0) throw Error(ErrorKind::precondition, "D = {0} has no reciprocals");
  const Rational lam = d.lambda.to_rational();
  if (den(lam) != 1) throw Error(ErrorKind::precondition, "lambda must be an integer");
  const Rational c = d.scale.to_rational() * d.H.basis()[0].to_rational();
  const auto lp = num(lam) > 1 ? factor(num(lam)) : std::map<Integer, unsigned>{};
  // strip λ-primes from the numerator; 1 ∈ D forces what is left to be 1
  Integer u = boost::multiprecision::abs(num(c));
  for (const auto& [p, e] : lp)
    while (u % p == 0) u /= p;
  if (u != 1) throw Error(ErrorKind::precondition, "1 is not in D");
  PrimeMultiset out;
  for (const auto& [p, e] : lp) out.entries[p] = std::nullopt;
  for (const auto& [p, e] : factor(den(c)))
    if (!out.entries.count(p)) out.entries[p] = e;
  return out;
}

bool rec_member(const PrimeMultiset& p, const Integer& n) {
  for (const auto& [q, e] : factor(n)) {
    auto it = p.entries.find(q);
    if (it == p.entries.end()) return false;
    if (it->second && *it->second < e) return false;
  }
  return true;
}

bool rec_member(const ClopenValuesSet& d, const Integer& n) { return rec_member(rec_set(d), n); }

std::vector<Integer> prime_sequence(const PrimeMultiset& p, std::size_t count) {
  std::vector<Integer> out;
  if (p.entries.empty()) return out;
  for (unsigned round = 0; out.size() < count; ++round) {
    bool any = false;
    for (const auto& [q, m] : p.entries) {
      if (m && *m <= round) continue;
      any = true;
      out.push_back(q);
      if (out.size() == count) break;
    }
    if (!any) break;
  }
  return out;
}

}  // namespace bratteli
