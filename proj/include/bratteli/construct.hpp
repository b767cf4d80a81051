#pragma once

// Diagrams and abstract measure objects built from prescribed data.

#include "bratteli/svalues.hpp"

#include <string>
#include <vector>

namespace bratteli {

// Odometer on primes p_1, p_2, ... with an infinite companion vertex:
// level-n vertices (β, α) = (0, 1), root edges (p_1, p_1), F_n = [[p, 0], [p, p]] with
// p = p_{n+1}. An α cylinder at level N has measure 1/(p_1···p_N); β cylinders are infinite.
struct Odometer {
  FiniteRankDiagram diagram;
  PathMeasure measure;
  ClopenValuesSet svalues;  // read off the construction, not copied from the input
  DefectiveProfile profile;  // the all-β paths: a Cantor set of measure zero
  PrimeMultiset primes;
  std::vector<Integer> prime_prefix, prime_cycle;  // p_n = prefix, then cycle forever
};

// Throws Error(density_violation) when Rec(D) is finite, Error(unsupported) for irrational D.
Odometer odometer_from_grouplike(const ClopenValuesSet& d);
Integer odometer_prime(const Odometer& o, std::size_t n);  // n >= 1
// a_n / p_n read from F_n; equals 1 for every n, so Σ a_n/p_n diverges.
Rational divergence_term(const Odometer& o, std::size_t n);

// Adds `count` one-vertex classes with loop weight ⌈λ_α⌉ + 1, each feeding the first α vertex.
StationaryDiagram add_infinite_components(const StationaryDiagram& d, std::size_t alpha, std::size_t count);

struct AbstractGoodMeasure {
  enum class Provenance { alphaZ_product, one_point_compactification, diagram };
  ClopenValuesSet svalues;
  DefectiveProfile profile;
  Provenance provenance = Provenance::diagram;
};
std::string to_string(AbstractGoodMeasure::Provenance p);

// s: the bounded clopen values set of a good finite measure.
AbstractGoodMeasure alphaZ_product(const ClopenValuesSet& s);
AbstractGoodMeasure one_point_object(const ClopenValuesSet& s);

// Lexicographic adic successor truncated at the path's level; the maximal path wraps to
// the minimal path ending at the same vertex.
CylinderSet vershik_successor(const FiniteRankDiagram& d, const CylinderSet& path);
CylinderSet minimal_path(const FiniteRankDiagram& d, std::size_t level, std::uint32_t vertex);

}  // namespace bratteli
