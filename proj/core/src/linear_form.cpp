#include "pirbound/linear_form.hpp"

namespace pirbound {

LinearForm& LinearForm::add_entropy(SubsetId id, const Rational& coeff) {
  if (coeff == 0) return *this;
  auto it = entropy.find(id);
  if (it == entropy.end()) {
    entropy.emplace(id, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) entropy.erase(it);
  }
  return *this;
}

LinearForm& LinearForm::add_scalar(const std::string& name, const Rational& coeff) {
  if (coeff == 0) return *this;
  auto it = scalars.find(name);
  if (it == scalars.end()) {
    scalars.emplace(name, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) scalars.erase(it);
  }
  return *this;
}

LinearForm& LinearForm::operator+=(const LinearForm& other) {
  for (const auto& [id, c] : other.entropy) add_entropy(id, c);
  for (const auto& [name, c] : other.scalars) add_scalar(name, c);
  constant += other.constant;
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& other) {
  for (const auto& [id, c] : other.entropy) add_entropy(id, Rational(-c));
  for (const auto& [name, c] : other.scalars) add_scalar(name, Rational(-c));
  constant -= other.constant;
  return *this;
}

LinearForm& LinearForm::operator*=(const Rational& factor) {
  if (factor == 0) {
    entropy.clear();
    scalars.clear();
    constant = 0;
    return *this;
  }
  for (auto& [id, c] : entropy) c *= factor;
  for (auto& [name, c] : scalars) c *= factor;
  constant *= factor;
  return *this;
}

LinearForm operator+(LinearForm lhs, const LinearForm& rhs) { return lhs += rhs; }
LinearForm operator-(LinearForm lhs, const LinearForm& rhs) { return lhs -= rhs; }
LinearForm operator*(const Rational& factor, LinearForm form) { return form *= factor; }

}  // namespace pirbound
