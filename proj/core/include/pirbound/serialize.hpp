#pragma once

#include <string>

#include "pirbound/lp.hpp"
#include "pirbound/scheme.hpp"

namespace pirbound {

// Canonical, versioned JSON documents. Emission order is deterministic
// (coordinates ascending, tags in map order), so byte-identical inputs yield
// byte-identical documents. Parsers throw std::invalid_argument on malformed
// input.

std::string model_to_json(const LinearProgram& program);
LinearProgram model_from_json(const std::string& text);

// Stable join key between a model document and its certificates:
// "fnv1a64:" + 16 hex digits over the canonical model document.
std::string model_hash(const LinearProgram& program);

std::string certificate_to_json(const DualCertificate& cert, const std::string& model_hash);

struct LoadedCertificate {
  DualCertificate certificate;
  std::string model_hash;
};
LoadedCertificate certificate_from_json(const std::string& text);

// Dense-table scheme document (canonical ordering: lexicographic over
// inputs). Materialization enumerates the function domains; refuses above the
// guard.
std::string scheme_to_json(const SchemeSpec& scheme,
                           std::int64_t guard = kDefaultEnumerationGuard);
SchemeSpec scheme_from_json(const std::string& text);

}  // namespace pirbound
