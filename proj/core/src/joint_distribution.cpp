#include "pirbound/joint_distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace pirbound {

const Rational& EntropyVector::at(SubsetId id) const {
  if (id.mask == 0 || id.mask > ground.full_mask())
    throw std::invalid_argument("entropy coordinate out of range");
  return values[id.mask - 1];
}

Rational evaluate(const LinearForm& form, const EntropyVector& v,
                  const std::map<std::string, Rational>& scalar_values) {
  Rational acc = form.constant;
  for (const auto& [id, coeff] : form.entropy) acc += coeff * v.at(id);
  for (const auto& [name, coeff] : form.scalars) {
    auto it = scalar_values.find(name);
    if (it == scalar_values.end())
      throw std::invalid_argument("unbound scalar '" + name + "'");
    acc += coeff * it->second;
  }
  return acc;
}

JointDistribution::JointDistribution(GroundSet ground, std::vector<std::int64_t> alphabet_sizes,
                                     std::vector<Rational> table)
    : ground_(std::move(ground)), alphabets_(std::move(alphabet_sizes)), table_(std::move(table)) {
  if (static_cast<int>(alphabets_.size()) != ground_.size())
    throw std::invalid_argument("alphabet count does not match ground set size");
  std::int64_t outcomes = 1;
  for (std::size_t i = 0; i < alphabets_.size(); ++i) {
    if (alphabets_[i] < 1)
      throw std::invalid_argument("alphabet size must be >= 1 for '" + ground_.name(static_cast<int>(i)) + "'");
    if (outcomes > (std::int64_t{1} << 40) / alphabets_[i])
      throw std::invalid_argument("outcome space too large");
    outcomes *= alphabets_[i];
  }
  if (static_cast<std::int64_t>(table_.size()) != outcomes)
    throw std::invalid_argument("probability table size does not match declared alphabets");
  Rational sum = 0;
  for (const auto& p : table_) {
    if (p < 0) throw std::invalid_argument("negative probability entry");
    sum += p;
  }
  if (sum != 1) throw std::invalid_argument("probabilities sum to " + rational_string(sum) + ", not 1");
}

std::vector<int> JointDistribution::decode(std::int64_t index) const {
  std::vector<int> digits(alphabets_.size());
  for (int i = ground_.size() - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = static_cast<int>(index % alphabets_[static_cast<std::size_t>(i)]);
    index /= alphabets_[static_cast<std::size_t>(i)];
  }
  return digits;
}

EntropyVector entropy_vector_from_distribution(const JointDistribution& d, double unit_bits) {
  if (!(unit_bits > 0)) throw std::invalid_argument("normalization unit must be positive");
  const int n = d.ground().size();
  const std::uint32_t full = d.ground().full_mask();
  const std::int64_t outcomes = d.outcome_count();
  if ((static_cast<std::int64_t>(full)) * outcomes > (std::int64_t{1} << 33))
    throw std::invalid_argument("entropy table too large to enumerate");

  // per-variable projection strides
  std::vector<std::int64_t> radix(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) radix[static_cast<std::size_t>(i)] = d.alphabets()[static_cast<std::size_t>(i)];

  EntropyVector out{d.ground(), std::vector<Rational>(full)};
  std::vector<int> digits;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    // group outcome probabilities by the projection onto `mask`
    std::unordered_map<std::int64_t, Rational> marginal;
    for (std::int64_t idx = 0; idx < outcomes; ++idx) {
      const Rational& p = d.table()[static_cast<std::size_t>(idx)];
      if (p == 0) continue;
      digits = d.decode(idx);
      std::int64_t key = 0;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) key = key * radix[static_cast<std::size_t>(i)] + digits[static_cast<std::size_t>(i)];
      marginal[key] += p;
    }
    long double h = 0.0L;
    for (const auto& [key, p] : marginal) {
      (void)key;
      const long double pd = static_cast<long double>(rational_to_double(p));
      if (pd > 0.0L) h -= pd * std::log2(pd);
    }
    out.values[mask - 1] = rational_from_double(static_cast<double>(h / unit_bits));
  }
  return out;
}

}  // namespace pirbound
