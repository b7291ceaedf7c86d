#include "pirbound/ground_set.hpp"

#include <stdexcept>

namespace pirbound {

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("ground set must not be empty");
  if (static_cast<int>(names_.size()) > kMaxVariables)
    throw std::invalid_argument("ground set larger than " + std::to_string(kMaxVariables) +
                                " variables");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("empty variable label");
    if (names_[i].find(',') != std::string::npos)
      throw std::invalid_argument("label '" + names_[i] + "' must not contain ','");
    auto [it, inserted] = index_.emplace(names_[i], static_cast<int>(i));
    if (!inserted) throw std::invalid_argument("duplicate variable label '" + names_[i] + "'");
  }
}

int GroundSet::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end())
    throw std::invalid_argument("unknown variable label '" + label + "'");
  return it->second;
}

bool GroundSet::contains(const std::string& label) const {
  return index_.find(label) != index_.end();
}

std::uint32_t GroundSet::mask_of(std::span<const std::string> labels) const {
  std::uint32_t mask = 0;
  for (const auto& label : labels) {
    const std::uint32_t bit = 1u << index_of(label);
    if (mask & bit) throw std::invalid_argument("repeated variable label '" + label + "'");
    mask |= bit;
  }
  return mask;
}

std::uint32_t GroundSet::mask_of(std::initializer_list<const char*> labels) const {
  std::vector<std::string> v(labels.begin(), labels.end());
  return mask_of(std::span<const std::string>(v));
}

std::string GroundSet::subset_name(std::uint32_t mask) const {
  if (mask == 0 || mask > full_mask())
    throw std::invalid_argument("subset mask out of range for this ground set");
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (mask & (1u << i)) {
      if (!out.empty()) out += ',';
      out += names_[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

std::uint32_t GroundSet::parse_subset(const std::string& joined) const {
  std::vector<std::string> labels;
  std::size_t start = 0;
  while (start <= joined.size()) {
    const std::size_t comma = joined.find(',', start);
    const std::size_t end = (comma == std::string::npos) ? joined.size() : comma;
    labels.push_back(joined.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return mask_of(std::span<const std::string>(labels));
}

}  // namespace pirbound
