#pragma once

// Goodness, (weak) homeomorphism verdicts and back-and-forth certificates.

#include "bratteli/construct.hpp"
#include "bratteli/oracle.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bratteli {

struct GoodnessWitness {
  CylinderSet v;         // level-1 cylinder at an α vertex
  FieldElement w;        // μ(u) < μ(V), and no clopen subset of V has measure w
  CylinderSet u;         // a cylinder realizing w
  std::size_t vertex = 0;
  std::size_t exponent = 0;  // w = scale · x_vertex / λ^exponent
};

struct GoodnessVerdict {
  enum class Value { good, bad, undetermined };
  Value verdict = Value::undetermined;
  std::optional<GoodnessWitness> witness;
};
const char* to_string(GoodnessVerdict::Value v);

// Good iff λ^R x_i lies in the group generated by the α entries for every non-α i in B_f.
GoodnessVerdict is_good(const ErgodicMeasure& mu, int bound = 64);

// What the homeomorphism criterion looks at.
struct MeasureInvariants {
  Tri good = Tri::undetermined;
  ClopenValuesSet svalues;
  DefectiveProfile profile;
  bool finite = false;
};
MeasureInvariants invariants(const ErgodicMeasure& mu, int bound = 64);
MeasureInvariants invariants(const AbstractGoodMeasure& m);
// Good by construction: every finite clopen value is k/(p_1···p_N).
MeasureInvariants invariants(const Odometer& o);

struct HomeoVerdict {
  enum class Value { homeomorphic, not_homeomorphic, undetermined };
  enum class Reason { svalues_mismatch, defective_profile_mismatch, goodness_mismatch, criteria_met, inconclusive };
  Value verdict = Value::undetermined;
  Reason reason = Reason::inconclusive;
  std::string detail;
};
const char* to_string(HomeoVerdict::Value v);
const char* to_string(HomeoVerdict::Reason r);

HomeoVerdict homeomorphic(const MeasureInvariants& a, const MeasureInvariants& b, int bound = 64);
HomeoVerdict homeomorphic(const ErgodicMeasure& mu, const ErgodicMeasure& nu, int bound = 64);
HomeoVerdict homeomorphic(const AbstractGoodMeasure& a, const AbstractGoodMeasure& b, int bound = 64);

// c with S(μ) = c·S(ν). verdict no: provably none; undetermined: restricted search failed.
struct WeakHomeoResult {
  Tri verdict = Tri::undetermined;
  std::optional<FieldElement> c;
  std::string detail;
};
WeakHomeoResult weakly_homeomorphic(const MeasureInvariants& a, const MeasureInvariants& b, int bound = 64);

// Stage j pairs x[i] with y[i]; parent[i] indexes the stage j-1 pair containing them.
struct BackForthStage {
  std::vector<ClopenSet> x, y;
  std::vector<std::size_t> parent;
  std::vector<ExtValue> measure;
};
struct BackForthCertificate {
  std::size_t depth = 0;
  std::vector<BackForthStage> stages;  // stages[0] pairs the whole spaces
};

// Throws Error(certificate_failure) naming the cell that could not be matched.
BackForthCertificate back_and_forth(const PathMeasure& mu, const PathMeasure& nu, std::size_t depth,
                                    const EnumerationBudget& budget = {});
// Re-checks partitions, refinement and ν(ρ(A)) = μ(A) from scratch; empty string when valid.
std::string verify(const BackForthCertificate& cert, const PathMeasure& mu, const PathMeasure& nu,
                   std::size_t cap = kDefaultEnumerationCap);

// Throws Error(not_applicable) for finite measures.
Tri good_order_exists(const MeasureInvariants& m);

}  // namespace bratteli
