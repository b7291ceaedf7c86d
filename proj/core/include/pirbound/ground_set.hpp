#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pirbound {

// Nonempty subset of a ground set, encoded as a bitmask over variable
// positions. Coordinate index of the joint-entropy space.
struct SubsetId {
  std::uint32_t mask = 0;
  auto operator<=>(const SubsetId&) const = default;
};

// Ordered universe of random-variable labels. Immutable after construction;
// the position of a label fixes its bit in every SubsetId.
class GroundSet {
 public:
  static constexpr int kMaxVariables = 24;

  GroundSet() = default;  // empty universe; placeholder for containers
  explicit GroundSet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }

  // Throws std::invalid_argument naming the label when absent.
  int index_of(const std::string& label) const;
  bool contains(const std::string& label) const;

  std::uint32_t full_mask() const { return (1u << names_.size()) - 1u; }

  // Mask of a list of labels; rejects unknown or repeated labels.
  std::uint32_t mask_of(std::span<const std::string> labels) const;
  std::uint32_t mask_of(std::initializer_list<const char*> labels) const;

  // Canonical coordinate name: labels in ground order joined by ",".
  std::string subset_name(std::uint32_t mask) const;
  std::string subset_name(SubsetId id) const { return subset_name(id.mask); }

  // Inverse of subset_name; rejects unknown labels and empty input.
  std::uint32_t parse_subset(const std::string& joined) const;

  bool operator==(const GroundSet& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

}  // namespace pirbound
