#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pirbound/linear_form.hpp"

namespace pirbound {

// Joint entropies for every nonempty subset of a ground set, in normalized
// units (the caller's normalization constant = 1). Values are exact rationals;
// distribution-derived vectors hold the exact binary expansion of the floating
// entropy they were computed with.
struct EntropyVector {
  GroundSet ground;
  std::vector<Rational> values;  // index = mask - 1

  const Rational& at(SubsetId id) const;
};

// Exact inner product of a form with an entropy vector and a scalar binding.
// Throws on coordinates outside the vector or unbound scalars.
Rational evaluate(const LinearForm& form, const EntropyVector& v,
                  const std::map<std::string, Rational>& scalar_values = {});

// Explicit finite joint distribution: per-variable alphabet sizes and a dense
// probability table over the mixed-radix outcome space (variable 0 is the
// most significant digit). Probabilities are exact and sum to 1.
class JointDistribution {
 public:
  JointDistribution(GroundSet ground, std::vector<std::int64_t> alphabet_sizes,
                    std::vector<Rational> table);

  const GroundSet& ground() const { return ground_; }
  const std::vector<std::int64_t>& alphabets() const { return alphabets_; }
  const std::vector<Rational>& table() const { return table_; }
  std::int64_t outcome_count() const { return static_cast<std::int64_t>(table_.size()); }

  // Digits of an outcome index, one per variable.
  std::vector<int> decode(std::int64_t index) const;

 private:
  GroundSet ground_;
  std::vector<std::int64_t> alphabets_;
  std::vector<Rational> table_;
};

// Brute-force oracle: marginal Shannon entropy of every nonempty subset, in
// bits divided by unit_bits. Probabilities are grouped exactly; only the final
// p*log2(p) accumulation is floating point (long double), stored exactly.
EntropyVector entropy_vector_from_distribution(const JointDistribution& d,
                                               double unit_bits = 1.0);

}  // namespace pirbound
