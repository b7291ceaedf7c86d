#pragma once

#include <map>
#include <string>

#include "pirbound/ground_set.hpp"
#include "pirbound/rational.hpp"

namespace pirbound {

// Sparse rational linear functional over joint-entropy coordinates plus named
// scalar variables, with a constant term. Absent key means coefficient zero;
// stored coefficients are never zero.
struct LinearForm {
  std::map<SubsetId, Rational> entropy;
  std::map<std::string, Rational> scalars;
  Rational constant = 0;

  LinearForm& add_entropy(SubsetId id, const Rational& coeff);
  LinearForm& add_scalar(const std::string& name, const Rational& coeff);

  LinearForm& operator+=(const LinearForm& other);
  LinearForm& operator-=(const LinearForm& other);
  LinearForm& operator*=(const Rational& factor);

  bool is_zero() const { return entropy.empty() && scalars.empty() && constant == 0; }
  bool operator==(const LinearForm& other) const = default;
};

LinearForm operator+(LinearForm lhs, const LinearForm& rhs);
LinearForm operator-(LinearForm lhs, const LinearForm& rhs);
LinearForm operator*(const Rational& factor, LinearForm form);

enum class Sense { GreaterEqualZero, EqualZero };

// Tagged row "form >= 0" or "form = 0". Tags are the stable join key between
// programs and certificates.
struct Constraint {
  LinearForm form;
  Sense sense = Sense::GreaterEqualZero;
  std::string tag;
};

}  // namespace pirbound
