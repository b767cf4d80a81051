#pragma once

// Exhaustive desk-scale searches over clopen sets. "none" means the search space was
// fully explored; "inconclusive" means a budget cut it short.

#include "bratteli/measure.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace bratteli {

struct EnumerationBudget {
  std::size_t max_level = 5;
  std::size_t max_cells = 1000000;
  std::optional<FieldElement> value_bound;
};

// Budget defaults overridden from BRATTELI_BUDGET="max_level=6,max_cells=200000,bound=2".
EnumerationBudget budget_from_env(EnumerationBudget base = {});

struct ValueEnumeration {
  std::vector<FieldElement> values;  // ascending
  bool partial = false;
};
// Finite measures of all unions of level-max_level cylinders (hence of all coarser ones),
// truncated at value_bound.
ValueEnumeration enumerate_clopen_values(const PathMeasure& mu, const EnumerationBudget& budget);

enum class SearchStatus { found, none, inconclusive };
const char* to_string(SearchStatus s);

struct SubsetResult {
  SearchStatus status = SearchStatus::none;
  ClopenSet set;
  std::size_t level = 0;
};
// W ⊆ V with μ(W) = w, preferring the coarsest level.
SubsetResult subset_search(const PathMeasure& mu, const ClopenSet& v, const FieldElement& w,
                           const EnumerationBudget& budget);

struct PartitionResult {
  SearchStatus status = SearchStatus::none;
  std::vector<ClopenSet> parts;
};
// Throws Error(precondition) unless the parts are nonnegative and sum to μ(U) < ∞.
PartitionResult refinability_check(const PathMeasure& mu, const ClopenSet& u, const std::vector<FieldElement>& parts,
                                   const EnumerationBudget& budget);

using PathMap = std::function<CylinderSet(const CylinderSet&)>;
// μ(T^{-1} U) = μ(U) for every cylinder U of level ≤ depth, with T applied at level depth.
bool verify_invariance(const PathMeasure& mu, const PathMap& successor, std::size_t depth,
                       std::size_t cap = kDefaultEnumerationCap);

}  // namespace bratteli
