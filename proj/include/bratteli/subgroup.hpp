#pragma once

// Finitely generated additive subgroups of a real number field, kept in a canonical
// form: common denominator D (lcm of all coordinate denominators) and the Hermite
// normal form of the integer lattice D*H.

#include "bratteli/error.hpp"
#include "bratteli/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bratteli {

// Row-style Hermite normal form; zero rows dropped, pivots positive, entries
// above each pivot reduced into [0, pivot).
Matrix<Integer> hermite_normal_form(Matrix<Integer> rows);

class FinGenSubgroup {
 public:
  FinGenSubgroup() : den_(1), hnf_(0, 1) {}

  static FinGenSubgroup from_generators(const FieldPtr& field, const std::vector<FieldElement>& gens);

  const FieldPtr& field() const { return field_; }
  std::size_t dimension() const { return static_cast<std::size_t>(hnf_.cols()); }
  std::size_t rank() const { return static_cast<std::size_t>(hnf_.rows()); }
  const Integer& denominator() const { return den_; }
  const Matrix<Integer>& hnf() const { return hnf_; }
  std::vector<FieldElement> basis() const;

  bool contains(const FieldElement& x) const;
  // Rational coordinates of x in basis(), or nullopt when x is not in Q*H.
  std::optional<Vector<Rational>> coordinates(const FieldElement& x) const;
  FinGenSubgroup scaled(const FieldElement& c) const;

  friend bool operator==(const FinGenSubgroup& a, const FinGenSubgroup& b);
  friend bool operator!=(const FinGenSubgroup& a, const FinGenSubgroup& b) { return !(a == b); }
  std::string to_string() const;

 private:
  std::vector<Rational> scaled_coords(const FieldElement& x) const;
  FieldPtr field_;
  Integer den_;
  Matrix<Integer> hnf_;
};

inline FinGenSubgroup group_from_generators(const FieldPtr& field, const std::vector<FieldElement>& gens) {
  return FinGenSubgroup::from_generators(field, gens);
}
inline bool group_member(const FinGenSubgroup& g, const FieldElement& x) { return g.contains(x); }

struct ClosureAnswer {
  Tri answer = Tri::undetermined;
  int exponent = -1;  // minimal N with λ^N x ∈ H when answer == yes
};

// Decides whether λ^N x ∈ H for some N ≥ 0. Requires λH ⊆ H.
// H ⊆ Q: gcd iteration on the reduced denominator (exact, bound ignored).
// Otherwise: λ acts on (D^{-1}H)/H through an integer matrix; by a length argument a
// hit, if any, occurs by N = rank * ceil(log2 D). Undetermined only when that length
// exceeds both `bound` and an internal step cap.
ClosureAnswer lambda_closure_member(const FinGenSubgroup& h, const FieldElement& lambda, const FieldElement& x,
                                    int bound = 64);
// The two routes separately, for cross-checking.
ClosureAnswer closure_member_rational(const FinGenSubgroup& h, const FieldElement& lambda, const FieldElement& x);
ClosureAnswer closure_member_lattice(const FinGenSubgroup& h, const FieldElement& lambda, const FieldElement& x,
                                     int bound = 64);
// Throws Error(precondition) unless λH ⊆ H.
void require_lambda_invariant(const FinGenSubgroup& h, const FieldElement& lambda);

bool scaled_group_equal(const FinGenSubgroup& g1, const FinGenSubgroup& g2, const FieldElement& c);

struct ScaleSearch {
  std::optional<FieldElement> scale;
  bool complete = false;  // a missing scale is a proof of nonexistence
};
// Candidates |b2/b1| over basis pairs, in basis order.
ScaleSearch find_scale(const FinGenSubgroup& g1, const FinGenSubgroup& g2);

}  // namespace bratteli
