#include "pirbound/information.hpp"

#include <stdexcept>

namespace pirbound {

namespace {

void check_disjoint(const GroundSet& ground, std::uint32_t a, std::uint32_t b,
                    const char* what) {
  const std::uint32_t overlap = a & b;
  if (!overlap) return;
  for (int i = 0; i < ground.size(); ++i) {
    if (overlap & (1u << i))
      throw std::invalid_argument(std::string(what) + ": variable '" + ground.name(i) +
                                  "' appears in both sets");
  }
}

void check_range(const GroundSet& ground, std::uint32_t mask, const char* what) {
  if (mask > ground.full_mask())
    throw std::invalid_argument(std::string(what) + ": subset mask out of range");
}

}  // namespace

LinearForm conditional_entropy(const GroundSet& ground, std::uint32_t a_mask,
                               std::uint32_t b_mask) {
  if (a_mask == 0) throw std::invalid_argument("conditional_entropy: empty variable set");
  check_range(ground, a_mask, "conditional_entropy");
  check_range(ground, b_mask, "conditional_entropy");
  check_disjoint(ground, a_mask, b_mask, "conditional_entropy");
  LinearForm form;
  form.add_entropy(SubsetId{a_mask | b_mask}, 1);
  if (b_mask != 0) form.add_entropy(SubsetId{b_mask}, -1);
  return form;
}

LinearForm conditional_entropy(const GroundSet& ground, std::span<const std::string> a,
                               std::span<const std::string> b) {
  return conditional_entropy(ground, ground.mask_of(a), ground.mask_of(b));
}

LinearForm conditional_mutual_information(const GroundSet& ground, std::uint32_t a_mask,
                                          std::uint32_t b_mask, std::uint32_t c_mask) {
  if (a_mask == 0 || b_mask == 0)
    throw std::invalid_argument("conditional_mutual_information: empty variable set");
  check_range(ground, a_mask | b_mask | c_mask, "conditional_mutual_information");
  check_disjoint(ground, a_mask, b_mask, "conditional_mutual_information");
  check_disjoint(ground, a_mask, c_mask, "conditional_mutual_information");
  check_disjoint(ground, b_mask, c_mask, "conditional_mutual_information");
  LinearForm form;
  form.add_entropy(SubsetId{a_mask | c_mask}, 1);
  form.add_entropy(SubsetId{b_mask | c_mask}, 1);
  form.add_entropy(SubsetId{a_mask | b_mask | c_mask}, -1);
  if (c_mask != 0) form.add_entropy(SubsetId{c_mask}, -1);
  return form;
}

LinearForm conditional_mutual_information(const GroundSet& ground,
                                          std::span<const std::string> a,
                                          std::span<const std::string> b,
                                          std::span<const std::string> c) {
  return conditional_mutual_information(ground, ground.mask_of(a), ground.mask_of(b),
                                        ground.mask_of(c));
}

std::vector<Constraint> elemental_inequalities(const GroundSet& ground) {
  const int n = ground.size();
  std::vector<Constraint> out;
  out.reserve(elemental_count(n));
  const std::uint32_t full = ground.full_mask();

  for (int i = 0; i < n; ++i) {
    const std::uint32_t ai = 1u << i;
    const std::uint32_t rest = full & ~ai;
    std::string tag = "H(" + ground.name(i);
    if (rest != 0) tag += "|" + ground.subset_name(rest);
    tag += ")";
    out.push_back({conditional_entropy(ground, ai, rest), Sense::GreaterEqualZero, tag});
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::uint32_t ai = 1u << i;
      const std::uint32_t aj = 1u << j;
      const std::uint32_t others = full & ~(ai | aj);
      // iterate C over subsets of `others` in ascending mask order
      std::uint32_t c = 0;
      while (true) {
        std::string tag = "I(" + ground.name(i) + ";" + ground.name(j);
        if (c != 0) tag += "|" + ground.subset_name(c);
        tag += ")";
        out.push_back({conditional_mutual_information(ground, ai, aj, c),
                       Sense::GreaterEqualZero, tag});
        if (c == others) break;
        c = (c - others) & others;  // next subset of `others`
      }
    }
  }
  return out;
}

std::size_t elemental_count(int n) {
  if (n < 1) throw std::invalid_argument("elemental_count: need at least one variable");
  std::size_t count = static_cast<std::size_t>(n);
  if (n >= 2)
    count += (static_cast<std::size_t>(n) * (n - 1) / 2) << (n - 2);
  return count;
}

}  // namespace pirbound
