#pragma once

// Composite of two real number fields via a primitive element γ = a + k b.

#include "bratteli/field.hpp"
#include "bratteli/subgroup.hpp"

namespace bratteli {

struct CompositeField {
  FieldPtr field;          // Q(a, b); null when both inputs are Q
  FieldElement image_a;    // image of the generator of the first field (0 if it is Q)
  FieldElement image_b;
};

// Throws Error(unsupported_field) when the degree product exceeds max_degree.
CompositeField compose_fields(const FieldPtr& a, const FieldPtr& b, int max_degree = 16);

// Map x ∈ from into the target field, given the image of from's generator.
FieldElement embed(const FieldElement& x, const FieldElement& image_of_generator);
FinGenSubgroup embed(const FinGenSubgroup& g, const FieldPtr& target, const FieldElement& image_of_generator);

}  // namespace bratteli
