#pragma once

// Ergodic tail-invariant measures of stationary diagrams.
//
// For a class α with Perron root λ > 1, x solves A x = λ x on α (x = 1 at the lowest α
// vertex) and is extended upstream class by class: a class β reaching α gets finite
// entries iff ρ(A_β) < λ and every successor of β that reaches α is finite. Ties count
// as infinite. Vertices that cannot reach α carry measure 0.
// A cylinder of length N ending at v has measure scale · x_v / λ^N.

#include "bratteli/algebraic.hpp"
#include "bratteli/diagram.hpp"
#include "bratteli/field.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bratteli {

// Nonnegative element of the field, or +∞.
struct ExtValue {
  FieldElement value;
  bool infinite = false;

  static ExtValue inf() { return ExtValue{FieldElement(0), true}; }
  std::string to_string() const { return infinite ? "inf" : value.to_string(); }
  friend ExtValue operator+(const ExtValue& a, const ExtValue& b) {
    if (a.infinite || b.infinite) return inf();
    return ExtValue{a.value + b.value, false};
  }
  friend bool operator==(const ExtValue& a, const ExtValue& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

enum class VertexKind { finite, infinite, null };

struct ErgodicMeasure {
  StationaryDiagram diagram;
  std::size_t alpha = 0;
  std::vector<std::size_t> alpha_vertices;
  AlgebraicNumber lambda;
  FieldPtr field;
  FieldElement lam;
  std::vector<VertexKind> kind;
  std::vector<FieldElement> x;  // raw eigenvector entries, zero unless finite
  bool finite = false;
  FieldElement raw_mass;  // Σ_{v ∈ B_f} r_v x_v / λ: mass of the paths lying in B_f
  FieldElement scale = FieldElement(1);

  std::vector<std::size_t> finite_vertices() const;
  std::vector<std::size_t> infinite_vertices() const;
  bool in_alpha(std::size_t v) const;
};

std::vector<ErgodicMeasure> ergodic_measures(const StationaryDiagram& d);
// Throws Error(not_applicable) when class α carries no measure (trivial or ρ = 1).
ErgodicMeasure ergodic_measure(const StationaryDiagram& d, std::size_t alpha);
// Same data with the eigenvector entries on class α taken as given (for tests of the
// normalization convention); throws Error(precondition) unless they form a positive eigenvector.
ErgodicMeasure ergodic_measure_from(const StationaryDiagram& d, std::size_t alpha,
                                    const std::vector<FieldElement>& alpha_entries);

ErgodicMeasure rescaled(const ErgodicMeasure& mu, const FieldElement& c);
// scale = 1 / raw_mass, so μ restricted to B_f is a probability measure.
ErgodicMeasure canonical(const ErgodicMeasure& mu);

ExtValue vertex_value(const ErgodicMeasure& mu, std::size_t vertex, std::size_t level);
ExtValue cylinder_measure(const ErgodicMeasure& mu, const CylinderSet& c);
ExtValue clopen_measure(const ErgodicMeasure& mu, const ClopenSet& u);
// scale · raw_mass (the μ_f mass; the full space is infinite for infinite measures).
FieldElement total_mass(const ErgodicMeasure& mu);
// Σ_{v ∈ B_f} h_f^(N)_v μ(v, N) computed directly at level N; equals total_mass for N ≥ 1.
FieldElement total_mass_at(const ErgodicMeasure& mu, std::size_t level);
// Level-N cylinders ending at each vertex whose path leaves B_f somewhere.
std::vector<Integer> infinite_cylinder_counts(const ErgodicMeasure& mu, std::size_t level);

struct MeasureSum {
  std::vector<std::pair<ErgodicMeasure, Rational>> terms;
};
ExtValue vertex_value(const MeasureSum& m, std::size_t vertex, std::size_t level);
ExtValue cylinder_measure(const MeasureSum& m, const CylinderSet& c);

struct DefectiveProfile {
  enum class Kind { empty, single_point, finite, cantor, cantor_plus_finite, unknown };
  enum class Mass { zero, finite_positive, infinite };
  Kind kind = Kind::empty;
  std::size_t count = 0;  // isolated points for finite / cantor_plus_finite
  Mass mass = Mass::zero;
  std::optional<FieldElement> mass_value;  // when finite

  bool definite() const { return kind != Kind::unknown; }
  std::string kind_string() const;
  std::string mass_string() const;
  friend bool operator==(const DefectiveProfile& a, const DefectiveProfile& b) {
    return a.kind == b.kind && a.count == b.count && a.mass == b.mass;
  }
};

DefectiveProfile defective_profile(const ErgodicMeasure& mu);
DefectiveProfile defective_profile(const MeasureSum& m);
// Topological type of the paths that stay inside `vertices` (an upstream-closed union of classes).
DefectiveProfile::Kind defect_kind(const StationaryDiagram& d, const std::vector<bool>& vertices, std::size_t& count);

// Measure given by its values on (level, vertex); the common currency of the oracle and
// of finite-rank constructions.
struct PathMeasure {
  FiniteRankDiagram diagram;
  std::function<ExtValue(std::size_t level, std::uint32_t vertex)> value;
};

PathMeasure path_measure(const ErgodicMeasure& mu);
PathMeasure path_measure(const MeasureSum& m);
ExtValue cylinder_measure(const PathMeasure& m, const CylinderSet& c);
ExtValue clopen_measure(const PathMeasure& m, const ClopenSet& u);

}  // namespace bratteli
