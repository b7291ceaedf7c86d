#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pirbound/linear_form.hpp"

namespace pirbound {

// H(A | B) = H(A u B) - H(B) as a linear form over entropy coordinates.
// A nonempty, A and B disjoint subsets of the ground set.
LinearForm conditional_entropy(const GroundSet& ground, std::uint32_t a_mask,
                               std::uint32_t b_mask);
LinearForm conditional_entropy(const GroundSet& ground, std::span<const std::string> a,
                               std::span<const std::string> b);

// I(A ; B | C) = H(AC) + H(BC) - H(ABC) - H(C). A, B nonempty; A, B, C
// pairwise disjoint.
LinearForm conditional_mutual_information(const GroundSet& ground, std::uint32_t a_mask,
                                          std::uint32_t b_mask, std::uint32_t c_mask);
LinearForm conditional_mutual_information(const GroundSet& ground,
                                          std::span<const std::string> a,
                                          std::span<const std::string> b,
                                          std::span<const std::string> c);

// The elemental Shannon-type family over n variables:
//   H(X_i | rest) >= 0                          (n rows)
//   I(X_i ; X_j | C) >= 0, i < j, C subset of rest   (n(n-1)/2 * 2^(n-2) rows)
// Tags are the canonical rendering, e.g. "H(W1|W2,X1)" and "I(W1;W2|X1)".
// Emission order is deterministic: entropies by variable index, then pairs by
// (i, j), conditioning sets by ascending mask.
std::vector<Constraint> elemental_inequalities(const GroundSet& ground);

// Closed-form count of the family above.
std::size_t elemental_count(int n);

}  // namespace pirbound
