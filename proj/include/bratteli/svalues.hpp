#pragma once

// Clopen values sets kept symbolically as scale · (⋃_N λ^{-N} H) ∩ [0, γ].

#include "bratteli/measure.hpp"
#include "bratteli/subgroup.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bratteli {

struct ClopenValuesSet {
  FieldPtr field;
  FinGenSubgroup H;
  FieldElement lambda = FieldElement(1);  // λ = 1: the plain group scale·H
  FieldElement scale = FieldElement(1);
  std::optional<FieldElement> bound;  // γ for finite measures

  std::string to_string() const;
};

ClopenValuesSet clopen_values(const ErgodicMeasure& mu);
// D = ⋃_N L^{-N} G[gens] with L the lcm of the generator denominators.
ClopenValuesSet grouplike_from_rationals(const std::vector<Rational>& gens);
ClopenValuesSet scaled(const ClopenValuesSet& s, const FieldElement& c);

Tri svalues_member(const ClopenValuesSet& s, const FieldElement& v, int bound = 64);
// Decided as mutual containment of the λ-closures (see svalues.cpp).
Tri svalues_equal(const ClopenValuesSet& a, const ClopenValuesSet& b, int bound = 64);
ClopenValuesSet product_svalues(const ClopenValuesSet& a, const ClopenValuesSet& b);

// Both sets moved into one field (composite when needed).
std::pair<ClopenValuesSet, ClopenValuesSet> common_presentation(const ClopenValuesSet& a, const ClopenValuesSet& b);

struct GroupLikeFinite {
  std::vector<Rational> values;  // sorted, distinct, contains 0 and gamma
  Rational gamma;
};
struct GroupLikeCheck {
  bool wraps_to_group = false;  // (D ∩ [0, γ']) + γ'Z is a group for every γ' ∈ D
  bool difference_closed = false;  // α ≤ β in D ⇒ β − α ∈ D
  bool group_like() const { return wraps_to_group && difference_closed; }
};
GroupLikeCheck is_group_like_truncated(const GroupLikeFinite& d);

// prime -> multiplicity; nullopt means ∞.
struct PrimeMultiset {
  std::map<Integer, std::optional<unsigned>> entries;
  bool infinite() const;  // some multiplicity is ∞
  std::string to_string() const;
};
// Trial division; throws Error(unsupported) past a fixed work limit.
std::map<Integer, unsigned> factor(Integer n);

PrimeMultiset rec_set(const ClopenValuesSet& d);
bool rec_member(const ClopenValuesSet& d, const Integer& n);
bool rec_member(const PrimeMultiset& p, const Integer& n);
// Round-robin over primes in increasing order, each consumed up to its multiplicity.
std::vector<Integer> prime_sequence(const PrimeMultiset& p, std::size_t count);

}  // namespace bratteli
