#pragma once

// Bratteli diagrams. Conventions:
//  * F(v, w) = number of edges from vertex v at level n+1 to vertex w at level n; A = Fᵀ.
//  * The root (level 0) has (F·1)_v edges to level-1 vertex v, so path counts obey
//    h^(1) = F·1 and h^(N+1) = F h^(N).
//  * Digraph of A: v -> w iff A(v, w) > 0. A path visits v at level n and w at level n+1
//    only along such arcs. "β reaches α" means a path from β to α in this digraph,
//    written β ⪯ α.

#include "bratteli/error.hpp"
#include "bratteli/number.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace bratteli {

class StationaryDiagram {
 public:
  StationaryDiagram() = default;
  // Throws Error(input) unless F is square, nonnegative, with no zero row or column.
  explicit StationaryDiagram(IncidenceMatrix f);

  const IncidenceMatrix& F() const { return f_; }
  IncidenceMatrix A() const { return f_.transpose(); }
  std::size_t vertex_count() const { return static_cast<std::size_t>(f_.rows()); }
  std::vector<std::int64_t> root_edges() const;

  friend bool operator==(const StationaryDiagram& a, const StationaryDiagram& b) {
    return a.f_.rows() == b.f_.rows() && a.f_ == b.f_;
  }

 private:
  IncidenceMatrix f_;
};

// Eventually periodic sequence F_1, F_2, ... where F_n maps level n+1 to level n:
// prefix matrices first, then the cycle repeated forever.
class FiniteRankDiagram {
 public:
  FiniteRankDiagram() = default;
  FiniteRankDiagram(std::vector<std::int64_t> root, std::vector<IncidenceMatrix> prefix,
                    std::vector<IncidenceMatrix> cycle);
  static FiniteRankDiagram from_stationary(const StationaryDiagram& d);

  const std::vector<std::int64_t>& root_edges() const { return root_; }
  // F_n for n >= 1: rows index level n+1, columns index level n.
  const IncidenceMatrix& incidence(std::size_t n) const;
  std::size_t level_size(std::size_t n) const;  // n >= 1
  std::size_t rank_bound() const;
  const std::vector<IncidenceMatrix>& prefix() const { return prefix_; }
  const std::vector<IncidenceMatrix>& cycle() const { return cycle_; }

  friend bool operator==(const FiniteRankDiagram& a, const FiniteRankDiagram& b);

 private:
  std::vector<std::int64_t> root_;
  std::vector<IncidenceMatrix> prefix_, cycle_;
};

struct Step {
  std::uint32_t vertex;  // vertex at this level
  std::uint32_t edge;    // index among edges entering `vertex` (ordered by source, then multiplicity)
  friend auto operator<=>(const Step&, const Step&) = default;
};

struct CylinderSet {
  std::vector<Step> path;  // path[n-1] describes level n
  std::size_t level() const { return path.size(); }
  std::uint32_t terminal_vertex() const { return path.back().vertex; }
  friend auto operator<=>(const CylinderSet&, const CylinderSet&) = default;
  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;
};

// Canonical clopen set: cylinders at one common level, sorted, pairwise distinct.
// Level 0 with the empty path is the whole space.
class ClopenSet {
 public:
  ClopenSet() = default;
  std::size_t level() const { return level_; }
  const std::vector<CylinderSet>& cylinders() const { return cyl_; }
  bool empty() const { return cyl_.empty(); }
  std::size_t size() const { return cyl_.size(); }
  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;

  static ClopenSet whole();
  static ClopenSet of(const CylinderSet& c);

 private:
  friend ClopenSet clopen_normalize(const FiniteRankDiagram& d, const std::vector<CylinderSet>& cylinders,
                                    std::size_t cap);
  friend ClopenSet lift(const FiniteRankDiagram& d, const ClopenSet& s, std::size_t level, std::size_t cap);
  std::size_t level_ = 0;
  std::vector<CylinderSet> cyl_;
};

constexpr std::size_t kDefaultEnumerationCap = 1000000;

// Source vertex (at level n) of the given edge entering `vertex` at level n+1 (n >= 1).
std::uint32_t edge_source(const FiniteRankDiagram& d, std::size_t n, std::uint32_t vertex, std::uint32_t edge);
// Number of edges entering `vertex` at level n (n = 1: root edges).
std::int64_t in_degree(const FiniteRankDiagram& d, std::size_t n, std::uint32_t vertex);
std::vector<CylinderSet> children(const FiniteRankDiagram& d, const CylinderSet& c);
bool is_prefix(const CylinderSet& prefix, const CylinderSet& c);

// h^(N): number of root-to-v paths of length N, per vertex at level N.
std::vector<Integer> path_counts(const FiniteRankDiagram& d, std::size_t level);
std::vector<CylinderSet> cylinders_at_level(const FiniteRankDiagram& d, std::size_t level,
                                            std::size_t cap = kDefaultEnumerationCap);
ClopenSet clopen_normalize(const FiniteRankDiagram& d, const std::vector<CylinderSet>& cylinders,
                           std::size_t cap = kDefaultEnumerationCap);
ClopenSet lift(const FiniteRankDiagram& d, const ClopenSet& s, std::size_t level,
               std::size_t cap = kDefaultEnumerationCap);
ClopenSet unite(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b);
ClopenSet intersect(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b);
ClopenSet subtract(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b);
bool disjoint(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b);
bool subset(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b);

struct ClassDecomposition {
  std::vector<std::vector<std::size_t>> classes;  // ascending by lowest vertex
  std::vector<std::size_t> class_of;
  std::vector<std::vector<bool>> reaches;  // reaches[b][a]: β reaches α (reflexive)

  std::size_t size() const { return classes.size(); }
  bool precedes(std::size_t beta, std::size_t alpha) const { return reaches[beta][alpha]; }
  // Direct arcs of the condensation, ascending.
  std::vector<std::size_t> successors(const StationaryDiagram& d, std::size_t beta) const;
  // Downstream classes last: if β reaches α (β ≠ α) then β comes first.
  std::vector<std::size_t> topological_order() const;
  friend bool operator==(const ClassDecomposition&, const ClassDecomposition&) = default;
};

ClassDecomposition class_decomposition(const StationaryDiagram& d);
Matrix<Integer> class_block(const StationaryDiagram& d, const std::vector<std::size_t>& cls);
// Class with no cycle (single vertex without a loop).
bool is_trivial_class(const StationaryDiagram& d, const std::vector<std::size_t>& cls);
// gcd of cycle lengths inside the class (0 for trivial classes).
std::size_t class_period(const StationaryDiagram& d, const std::vector<std::size_t>& cls);
// Source classes (reached by no other class) carrying infinite paths.
std::size_t minimal_component_count(const StationaryDiagram& d);

StationaryDiagram telescope(const StationaryDiagram& d, unsigned k);

// DOT text of the condensation DAG; labels may be empty.
std::string condensation_dot(const StationaryDiagram& d, const std::vector<std::string>& class_labels = {});

}  // namespace bratteli
