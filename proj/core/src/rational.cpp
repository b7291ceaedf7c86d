#include "pirbound/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace pirbound {

Int ipow(const Int& base, unsigned exp) {
  Int result = 1;
  Int b = base;
  while (exp > 0) {
    if (exp & 1u) result *= b;
    b *= b;
    exp >>= 1u;
  }
  return result;
}

Rational parse_rational(const std::string& text) {
  auto fail = [&] {
    throw std::invalid_argument("not a rational: '" + text + "' (expected p or p/q)");
  };
  if (text.empty()) fail();
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(text)) fail();
      return Rational(Int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) fail();
    Int q(den);
    if (q == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(Int(num), q);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    fail();
  }
  return Rational(0);  // unreachable
}

std::string rational_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string decimal_string(const Rational& r, int digits) {
  if (digits < 1) digits = 1;
  const bool negative = r < 0;
  Rational a = negative ? Rational(-r) : r;
  const Int scale = ipow(10, static_cast<unsigned>(digits));
  // round(a * 10^digits), half away from zero
  Int scaled = numerator(a) * scale;
  Int q = scaled / denominator(a);
  Int rem = scaled % denominator(a);
  if (2 * rem >= denominator(a)) ++q;
  std::string s = q.str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (negative && q != 0) ? "-" + s : s;
}

double rational_to_double(const Rational& r) { return static_cast<double>(r); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  return Rational(x);
}

std::optional<Rational> approximate_rational(double x, const Int& max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  const bool negative = x < 0;
  double v = negative ? -x : x;
  // continued fraction expansion with convergent denominators capped
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    const double floor_f = std::floor(frac);
    if (floor_f > 9e18) break;
    Int a(static_cast<long long>(floor_f));
    Int p2 = a * p1 + p0;
    Int q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    const double r = frac - floor_f;
    if (r < 1e-15) break;
    frac = 1.0 / r;
  }
  if (q1 == 0) return std::nullopt;
  Rational best(p1, q1);
  return negative ? Rational(-best) : best;
}

namespace {

// Largest m with r^m == x (x >= 2); returns (r, m) with r not a perfect power.
std::pair<Int, unsigned> primitive_root(const Int& x) {
  const double bits = static_cast<double>(msb(x)) + 1;
  for (unsigned m = static_cast<unsigned>(bits); m >= 2; --m) {
    // integer m-th root by binary search
    Int lo = 2, hi = Int(1) << static_cast<unsigned>(bits / m + 1);
    while (lo <= hi) {
      Int mid = (lo + hi) / 2;
      Int p = ipow(mid, m);
      if (p == x) {
        auto [r, e] = primitive_root(mid);
        return {r, e * m};
      }
      if (p < x) lo = mid + 1; else hi = mid - 1;
    }
  }
  return {x, 1};
}

}  // namespace

std::optional<Rational> exact_log(const Int& value, const Int& base) {
  if (base < 2) throw std::invalid_argument("exact_log: base must be >= 2");
  if (value < 1) throw std::invalid_argument("exact_log: value must be >= 1");
  if (value == 1) return Rational(0);
  auto [rv, ev] = primitive_root(value);
  auto [rb, eb] = primitive_root(base);
  if (rv != rb) return std::nullopt;
  return Rational(Int(ev), Int(eb));
}

}  // namespace pirbound
